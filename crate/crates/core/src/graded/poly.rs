//! Canonical-form polynomials and the graded bracket.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Zero};

use super::monomial::Monomial;
use super::table::{GeneratorTable, Kind};
use super::{AlgebraError, Rational};

#[derive(Clone)]
pub struct GPoly {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}
impl Eq for GPoly {}

fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_term(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, q: Rational) {
    if q.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(q);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += q;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl GPoly {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        GPoly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<GeneratorTable>, q: Rational) -> Self {
        let mut p = Self::zero(table);
        add_term(&mut p.terms, Monomial::one(), q);
        p
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn generator(table: &Arc<GeneratorTable>, id: u16) -> Self {
        let mut p = Self::zero(table);
        p.terms.insert(Monomial::from_sorted(vec![(id, 1)]), Rational::one());
        p
    }

    /// The `index`-th (1-based) generator of `kind`.
    pub fn var(table: &Arc<GeneratorTable>, kind: Kind, index: usize) -> Self {
        Self::generator(table, table.id_of(kind, index))
    }

    pub fn from_monomial(table: &Arc<GeneratorTable>, m: Monomial, q: Rational) -> Self {
        let mut p = Self::zero(table);
        add_term(&mut p.terms, m, q);
        p
    }

    /// Builds a canonical polynomial from unsorted factor lists. Odd
    /// reorderings contribute their permutation sign; a repeated odd factor
    /// kills the term.
    pub fn normalize(
        table: &Arc<GeneratorTable>,
        raw: &[(Rational, Vec<u16>)],
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(table);
        for (q, ids) in raw {
            let mut acc = Some((Monomial::one(), false));
            for &id in ids {
                if id as usize >= table.len() {
                    return Err(AlgebraError::UnknownGenerator(format!("id {id}")));
                }
                acc = acc.and_then(|(m, neg)| {
                    m.mul(&Monomial::from_sorted(vec![(id, 1)]), table)
                        .map(|(r, n)| (r, neg ^ n))
                });
            }
            if let Some((m, neg)) = acc {
                add_term(&mut p.terms, m, if neg { -q.clone() } else { q.clone() });
            }
        }
        Ok(p)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_monomial(&mut self, m: Monomial, q: Rational) {
        add_term(&mut self.terms, m, q);
    }

    fn check(&self, other: &GPoly) -> Result<(), AlgebraError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(AlgebraError::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &GPoly) -> Result<GPoly, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, q) in &other.terms {
            add_term(&mut out.terms, m.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> GPoly {
        if q.is_zero() {
            return Self::zero(&self.table);
        }
        GPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> GPoly {
        self.scale(&Rational::from_integer(k.into()))
    }

    pub fn try_mul(&self, other: &GPoly) -> Result<GPoly, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(&self.table);
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                if let Some((m, neg)) = m1.mul(m2, &self.table) {
                    let q = q1 * q2;
                    add_term(&mut out.terms, m, if neg { -q } else { q });
                }
            }
        }
        Ok(out)
    }

    /// The graded bracket, as the biderivation
    /// `{F, G} = sum (F d/dz from the right) {z, w} (d/dw G from the left)`
    /// over paired generators `z, w`.
    pub fn try_bracket(&self, other: &GPoly) -> Result<GPoly, AlgebraError> {
        self.check(other)?;
        let t = &*self.table;
        let mut out = Self::zero(&self.table);
        // Left derivatives of G, grouped by generator.
        let mut left: BTreeMap<u16, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, q) in &other.terms {
            for &(id, _) in m.factors() {
                if t.pairing(id).is_empty() {
                    continue;
                }
                let (k, neg, rest) = m.derivative(id, false, t).expect("factor present");
                let c = q * Rational::from_integer(k.into());
                left.entry(id).or_default().push((rest, if neg { -c } else { c }));
            }
        }
        if left.is_empty() {
            return Ok(out);
        }
        for (m, q) in &self.terms {
            for &(z, _) in m.factors() {
                let (k, neg, lhs) = match m.derivative(z, true, t) {
                    Some(d) => d,
                    None => continue,
                };
                let a = q * Rational::from_integer(k.into());
                let a = if neg { -a } else { a };
                for entry in t.pairing(z) {
                    let Some(rhs) = left.get(&entry.partner) else { continue };
                    for (wm, wq) in &entry.coeff {
                        let Some((lw, n1)) = lhs.mul(wm, t) else { continue };
                        let aw = &a * wq;
                        for (rm, rq) in rhs {
                            if let Some((full, n2)) = lw.mul(rm, t) {
                                let c = &aw * rq;
                                add_term(&mut out.terms, full, if n1 ^ n2 { -c } else { c });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &GPoly) -> GPoly {
        self.try_bracket(other).expect("bracket operands share a generator table")
    }

    /// Degree of a homogeneous polynomial, `None` if inhomogeneous or zero.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.degree(&self.table));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Parity of a parity-homogeneous polynomial; zero counts as even.
    pub fn parity(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.degree(&self.table).rem_euclid(2));
        match it.next() {
            None => Some(0),
            Some(first) => it.all(|d| d == first).then_some(first),
        }
    }

    /// Split by `(total ghost number, function degree)`.
    pub fn grade_components(&self) -> BTreeMap<(i32, i32), GPoly> {
        self.split_by(|m, t| (m.total_ghost(t), m.degree(t)))
    }

    /// Split by `(ghost, antighost)` bidegree.
    pub fn bigrade_components(&self) -> BTreeMap<(u32, u32), GPoly> {
        self.split_by(|m, t| m.bidegree(t))
    }

    /// Split by function degree.
    pub fn degree_components(&self) -> BTreeMap<i32, GPoly> {
        self.split_by(|m, t| m.degree(t))
    }

    fn split_by<K: Ord>(&self, key: impl Fn(&Monomial, &GeneratorTable) -> K) -> BTreeMap<K, GPoly> {
        let mut out: BTreeMap<K, GPoly> = BTreeMap::new();
        for (m, q) in &self.terms {
            out.entry(key(m, &self.table))
                .or_insert_with(|| Self::zero(&self.table))
                .terms
                .insert(m.clone(), q.clone());
        }
        out
    }

    /// Keep only terms satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> GPoly {
        GPoly {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, q)| (m.clone(), q.clone())).collect(),
        }
    }

    /// Maximum total ghost number over terms.
    pub fn max_total_ghost(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.total_ghost(&self.table)).max()
    }

    /// Generator kinds appearing in some term.
    pub fn uses_kind(&self, kind: Kind) -> bool {
        self.terms.keys().any(|m| m.factors().iter().any(|&(id, _)| self.table.kind(id) == kind))
    }

    /// Partial derivative with respect to an even generator.
    pub fn diff_even(&self, id: u16) -> GPoly {
        assert!(!self.table.is_odd(id), "diff_even needs an even generator");
        let mut out = Self::zero(&self.table);
        for (m, q) in &self.terms {
            if let Some((k, _, rest)) = m.derivative(id, false, &self.table) {
                add_term(&mut out.terms, rest, q * Rational::from_integer(k.into()));
            }
        }
        out
    }

    /// Evaluates the base coordinates at `point` (indexed by base index - 1),
    /// leaving other generators symbolic.
    pub fn eval_base(&self, point: &[Rational]) -> GPoly {
        let mut out = Self::zero(&self.table);
        for (m, q) in &self.terms {
            let mut c = q.clone();
            let mut rest = Vec::new();
            for &(id, e) in m.factors() {
                let g = self.table.entry(id);
                if g.kind == Kind::Base {
                    c *= num::pow(point[g.index - 1].clone(), e as usize);
                } else {
                    rest.push((id, e));
                }
            }
            add_term(&mut out.terms, Monomial::from_sorted(rest), c);
        }
        out
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Keep terms whose base-coordinate degree is at most `d`.
    pub fn truncate_base_degree(&self, d: u32) -> GPoly {
        let t = self.table.clone();
        self.filter(|m| base_degree(m, &t) <= d)
    }
}

/// Total exponent of Base generators in `m`.
pub fn base_degree(m: &Monomial, t: &GeneratorTable) -> u32 {
    m.factors().iter().filter(|f| t.kind(f.0) == Kind::Base).map(|f| f.1 as u32).sum()
}

impl fmt::Debug for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GPoly({})", super::text::serialize(self))
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::serialize(self))
    }
}

impl Add for &GPoly {
    type Output = GPoly;
    fn add(self, rhs: &GPoly) -> GPoly {
        self.try_add(rhs).expect("operands share a generator table")
    }
}
impl Add for GPoly {
    type Output = GPoly;
    fn add(self, rhs: GPoly) -> GPoly {
        &self + &rhs
    }
}
impl Sub for &GPoly {
    type Output = GPoly;
    fn sub(self, rhs: &GPoly) -> GPoly {
        self + &(-rhs)
    }
}
impl Sub for GPoly {
    type Output = GPoly;
    fn sub(self, rhs: GPoly) -> GPoly {
        &self - &rhs
    }
}
impl Neg for &GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        GPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q.clone())).collect(),
        }
    }
}
impl Neg for GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        -&self
    }
}
impl Mul for &GPoly {
    type Output = GPoly;
    fn mul(self, rhs: &GPoly) -> GPoly {
        self.try_mul(rhs).expect("operands share a generator table")
    }
}
impl Mul for GPoly {
    type Output = GPoly;
    fn mul(self, rhs: GPoly) -> GPoly {
        &self * &rhs
    }
}
