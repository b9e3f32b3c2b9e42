//! Monomials in graded-commutative generators.
//!
//! A monomial is the list of `(id, exponent)` pairs sorted by id. Odd
//! generators always carry exponent 1; their order in the list is the
//! canonical ascending order, and any sign from reordering is carried by the
//! owning coefficient.

use super::table::GeneratorTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u16, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Wraps an already sorted, duplicate-free factor list.
    pub fn from_sorted(factors: Vec<(u16, u16)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial(factors)
    }

    pub fn factors(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, id: u16) -> u16 {
        self.0.iter().find(|f| f.0 == id).map_or(0, |f| f.1)
    }

    pub fn degree(&self, t: &GeneratorTable) -> i32 {
        self.0.iter().map(|&(id, e)| t.degree(id) * e as i32).sum()
    }

    /// (ghost, antighost) bidegree.
    pub fn bidegree(&self, t: &GeneratorTable) -> (u32, u32) {
        self.0.iter().fold((0, 0), |(g, a), &(id, e)| {
            let gen = t.entry(id);
            (g + gen.ghost * e as u32, a + gen.antighost * e as u32)
        })
    }

    /// Total ghost number, ghost minus antighost.
    pub fn total_ghost(&self, t: &GeneratorTable) -> i32 {
        let (g, a) = self.bidegree(t);
        g as i32 - a as i32
    }

    /// Product with sign: `self * other = sign * result`. `None` when an odd
    /// generator repeats.
    pub fn mul(&self, other: &Monomial, t: &GeneratorTable) -> Option<(Monomial, bool)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut odd_a_left = a.iter().filter(|f| t.is_odd(f.0)).count();
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                if t.is_odd(a[i].0) {
                    odd_a_left -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                if t.is_odd(b[j].0) && odd_a_left % 2 == 1 {
                    negative = !negative;
                }
                out.push(b[j]);
                j += 1;
            } else {
                if t.is_odd(a[i].0) {
                    return None;
                }
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((Monomial(out), negative))
    }

    /// Derivative with respect to `id` acting from the right (`right = true`)
    /// or from the left. Returns `(multiplier, sign_negative, quotient)`.
    pub fn derivative(
        &self,
        id: u16,
        right: bool,
        t: &GeneratorTable,
    ) -> Option<(u16, bool, Monomial)> {
        let pos = self.0.iter().position(|f| f.0 == id)?;
        let (_, e) = self.0[pos];
        let mut rest = self.0.clone();
        if t.is_odd(id) {
            let passed = if right {
                self.0[pos + 1..].iter().filter(|f| t.is_odd(f.0)).count()
            } else {
                self.0[..pos].iter().filter(|f| t.is_odd(f.0)).count()
            };
            rest.remove(pos);
            Some((1, passed % 2 == 1, Monomial(rest)))
        } else {
            if e == 1 {
                rest.remove(pos);
            } else {
                rest[pos].1 -= 1;
            }
            Some((e, false, Monomial(rest)))
        }
    }
}
