//! Generator alphabets for the two bracket presets.
//!
//! BFV1 is the degree -1 bracket on multivector fields tensored with the
//! ghost/antighost algebra. BFV0 is the degree 0 super Poisson bracket of the
//! classical BRST construction, where the base coordinates carry a supplied
//! Poisson tensor.
//!
//! Pairing convention: the member of a conjugate pair with the larger degree
//! comes first, `{e_a, x_a} = {c_k, b_k} = {C_p, B_p} = 1`. The reversed
//! entries follow from graded antisymmetry. The AntighostH generator `B` has
//! degree -1, which is the only value making the degree-one charge
//! homogeneous of degree 2.

use std::collections::HashMap;

use num::One;

use super::monomial::Monomial;
use super::{AlgebraError, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Base,
    Fiber,
    GhostG,
    GhostH,
    AntighostG,
    AntighostH,
}

impl Kind {
    /// Default token prefix.
    pub fn prefix(self) -> &'static str {
        match self {
            Kind::Base => "x",
            Kind::Fiber => "e",
            Kind::GhostG => "c",
            Kind::GhostH => "C",
            Kind::AntighostG => "b",
            Kind::AntighostH => "B",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Bfv0,
    Bfv1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: u16,
    pub name: String,
    pub kind: Kind,
    /// 1-based index within its kind.
    pub index: usize,
    pub degree: i32,
    pub parity: u8,
    pub ghost: u32,
    pub antighost: u32,
    pub conjugate: Option<u16>,
}

/// One entry `{z, w} = coeff` of the generator pairing; `coeff` is a
/// polynomial in base coordinates (constant except for BFV0 Poisson data).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEntry {
    pub partner: u16,
    pub coeff: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    preset: Preset,
    n: usize,
    dim_g: usize,
    dim_h: usize,
    entries: Vec<Generator>,
    by_name: HashMap<String, u16>,
    pairing: Vec<Vec<PairEntry>>,
}

fn kind_data(preset: Preset, kind: Kind) -> (i32, u32, u32) {
    match (preset, kind) {
        (_, Kind::Base) => (0, 0, 0),
        (_, Kind::Fiber) => (1, 0, 0),
        (_, Kind::GhostG) => (1, 1, 0),
        (_, Kind::GhostH) => (2, 1, 0),
        (Preset::Bfv1, Kind::AntighostG) => (0, 0, 1),
        (Preset::Bfv0, Kind::AntighostG) => (-1, 0, 1),
        (_, Kind::AntighostH) => (-1, 0, 1),
    }
}

impl GeneratorTable {
    /// Degree -1 table on `T*[1]R^n` with ghosts for `g` (dim_g) and `h` (dim_h).
    pub fn bfv1(n: usize, dim_g: usize, dim_h: usize) -> Self {
        Self::bfv1_named(n, dim_g, dim_h, None).expect("default names are valid")
    }

    /// As [`GeneratorTable::bfv1`], with optional custom names for the base
    /// coordinates.
    pub fn bfv1_named(
        n: usize,
        dim_g: usize,
        dim_h: usize,
        base_names: Option<&[String]>,
    ) -> Result<Self, AlgebraError> {
        let layout = [
            (Kind::Base, n),
            (Kind::Fiber, n),
            (Kind::GhostG, dim_g),
            (Kind::GhostH, dim_h),
            (Kind::AntighostG, dim_g),
            (Kind::AntighostH, dim_h),
        ];
        let mut t = Self::build(Preset::Bfv1, n, dim_g, dim_h, &layout, base_names)?;
        t.pair_conjugates(Kind::Fiber, Kind::Base, -1);
        t.pair_conjugates(Kind::GhostG, Kind::AntighostG, -1);
        t.pair_conjugates(Kind::GhostH, Kind::AntighostH, -1);
        Ok(t)
    }

    /// Degree 0 table for the classical BRST charge. `poisson` lists
    /// `(a, b, P^{ab})` for a < b (1-based base indices), each coefficient a
    /// list of `(coefficient, base exponents)` terms.
    pub fn bfv0(
        n: usize,
        dim_g: usize,
        poisson: &[(usize, usize, Vec<(Rational, Vec<u16>)>)],
    ) -> Self {
        let layout = [(Kind::Base, n), (Kind::GhostG, dim_g), (Kind::AntighostG, dim_g)];
        let mut t = Self::build(Preset::Bfv0, n, dim_g, 0, &layout, None)
            .expect("default names are valid");
        t.pair_conjugates(Kind::GhostG, Kind::AntighostG, 0);
        for (a, b, terms) in poisson {
            let (za, zb) = (t.id_of(Kind::Base, *a), t.id_of(Kind::Base, *b));
            let coeff: Vec<(Monomial, Rational)> = terms
                .iter()
                .map(|(q, exps)| {
                    let factors = exps
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (t.id_of(Kind::Base, i + 1), e))
                        .collect();
                    (Monomial::from_sorted(factors), q.clone())
                })
                .collect();
            let neg = coeff.iter().map(|(m, q)| (m.clone(), -q.clone())).collect();
            t.pairing[za as usize].push(PairEntry { partner: zb, coeff });
            t.pairing[zb as usize].push(PairEntry { partner: za, coeff: neg });
        }
        t
    }

    fn build(
        preset: Preset,
        n: usize,
        dim_g: usize,
        dim_h: usize,
        layout: &[(Kind, usize)],
        base_names: Option<&[String]>,
    ) -> Result<Self, AlgebraError> {
        let mut entries = Vec::new();
        let mut by_name = HashMap::new();
        for &(kind, count) in layout {
            let (degree, ghost, antighost) = kind_data(preset, kind);
            for index in 1..=count {
                let name = match (kind, base_names) {
                    (Kind::Base, Some(names)) => names
                        .get(index - 1)
                        .cloned()
                        .ok_or_else(|| AlgebraError::UnknownGenerator(format!("base {index}")))?,
                    _ => format!("{}{}", kind.prefix(), index),
                };
                let id = entries.len() as u16;
                if by_name.insert(name.clone(), id).is_some() {
                    return Err(AlgebraError::UnknownGenerator(format!("duplicate name {name}")));
                }
                entries.push(Generator {
                    id,
                    name,
                    kind,
                    index,
                    degree,
                    parity: degree.rem_euclid(2) as u8,
                    ghost,
                    antighost,
                    conjugate: None,
                });
            }
        }
        let pairing = vec![Vec::new(); entries.len()];
        Ok(GeneratorTable { preset, n, dim_g, dim_h, entries, by_name, pairing })
    }

    /// Sets `{first_i, second_i} = 1` and the antisymmetric partner entry.
    fn pair_conjugates(&mut self, first: Kind, second: Kind, shift: i32) {
        let count = self.entries.iter().filter(|g| g.kind == first).count();
        for i in 1..=count {
            let (z, w) = (self.id_of(first, i), self.id_of(second, i));
            let (dz, dw) = (self.degree(z) + shift, self.degree(w) + shift);
            // {w, z} = -(-1)^{(|z|+s)(|w|+s)} {z, w} with s the shift.
            let back = if (dz * dw).rem_euclid(2) == 0 { -1 } else { 1 };
            self.entries[z as usize].conjugate = Some(w);
            self.entries[w as usize].conjugate = Some(z);
            self.pairing[z as usize]
                .push(PairEntry { partner: w, coeff: vec![(Monomial::one(), Rational::one())] });
            self.pairing[w as usize].push(PairEntry {
                partner: z,
                coeff: vec![(Monomial::one(), Rational::from_integer(back.into()))],
            });
        }
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim_g(&self) -> usize {
        self.dim_g
    }
    pub fn dim_h(&self) -> usize {
        self.dim_h
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }
    pub fn entry(&self, id: u16) -> &Generator {
        &self.entries[id as usize]
    }
    pub fn degree(&self, id: u16) -> i32 {
        self.entries[id as usize].degree
    }
    pub fn is_odd(&self, id: u16) -> bool {
        self.entries[id as usize].parity == 1
    }
    pub fn kind(&self, id: u16) -> Kind {
        self.entries[id as usize].kind
    }
    pub fn pairing(&self, id: u16) -> &[PairEntry] {
        &self.pairing[id as usize]
    }
    /// Bracket degree shift: -1 for BFV1, 0 for BFV0.
    pub fn shift(&self) -> i32 {
        match self.preset {
            Preset::Bfv1 => -1,
            Preset::Bfv0 => 0,
        }
    }

    /// Id of the `index`-th (1-based) generator of `kind`. Panics if absent.
    pub fn id_of(&self, kind: Kind, index: usize) -> u16 {
        self.try_id_of(kind, index)
            .unwrap_or_else(|| panic!("no generator {}{}", kind.prefix(), index))
    }

    pub fn try_id_of(&self, kind: Kind, index: usize) -> Option<u16> {
        self.entries.iter().find(|g| g.kind == kind && g.index == index).map(|g| g.id)
    }

    pub fn lookup(&self, name: &str) -> Option<u16> {
        self.by_name.get(name).copied()
    }

    pub fn ids_of(&self, kind: Kind) -> Vec<u16> {
        self.entries.iter().filter(|g| g.kind == kind).map(|g| g.id).collect()
    }
}
