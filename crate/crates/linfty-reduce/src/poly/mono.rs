//! Monomial keys `s^a x^e θ_I` for polynomial multivector fields.
//!
//! `s_1..s_n` are even generators of degree 2 (the Sym𝔤* factor of the Taylor
//! algebra), `x_i` are coordinates and `θ_i` stands for `∂/∂x_i`. A pure multivector
//! field has `sym` identically zero.

use std::cmp::Ordering;
use std::fmt;

use crate::graded::BasisKey;

pub const MAX_DIM: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub sym: Vec<u16>,
    pub exps: Vec<u16>,
    pub wedge: u64,
}

impl Mono {
    pub fn one(nsym: usize, dim: usize) -> Self {
        Mono { sym: vec![0; nsym], exps: vec![0; dim], wedge: 0 }
    }

    pub fn new(sym: Vec<u16>, exps: Vec<u16>, wedge: u64) -> Self {
        assert!(exps.len() <= MAX_DIM);
        Mono { sym, exps, wedge }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn nsym(&self) -> usize {
        self.sym.len()
    }

    /// Number of `θ` factors.
    pub fn arity(&self) -> u32 {
        self.wedge.count_ones()
    }

    pub fn sym_degree(&self) -> u32 {
        self.sym.iter().map(|&a| a as u32).sum()
    }

    pub fn poly_degree(&self) -> u32 {
        self.exps.iter().map(|&a| a as u32).sum()
    }

    pub fn has_wedge(&self, i: usize) -> bool {
        self.wedge >> i & 1 == 1
    }

    /// Indices of the `θ` factors in increasing order.
    pub fn wedge_indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.has_wedge(i)).collect()
    }
}

impl BasisKey for Mono {
    fn degree(&self) -> i32 {
        2 * self.sym_degree() as i32 + self.arity() as i32 - 1
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.poly_degree().cmp(&other.poly_degree()))
            .then_with(|| self.sym.cmp(&other.sym))
            .then_with(|| self.wedge.cmp(&other.wedge))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of `θ_{w1} θ_{w2} = ± θ_{w1 ∪ w2}`, or 0 if they overlap.
pub fn wedge_sign(w1: u64, w2: u64) -> i32 {
    if w1 & w2 != 0 {
        return 0;
    }
    let mut parity = 0u32;
    let mut rest = w2;
    while rest != 0 {
        let j = rest.trailing_zeros();
        parity += if j >= 63 { 0 } else { (w1 >> (j + 1)).count_ones() };
        rest &= rest - 1;
    }
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Product of monomials with its sign; `None` if the `θ` parts overlap.
pub fn mono_mul(a: &Mono, b: &Mono) -> Option<(Mono, i32)> {
    let s = wedge_sign(a.wedge, b.wedge);
    if s == 0 {
        return None;
    }
    Some((
        Mono {
            sym: a.sym.iter().zip(&b.sym).map(|(x, y)| x + y).collect(),
            exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
            wedge: a.wedge | b.wedge,
        },
        s,
    ))
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.dim()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", format_mono(self, &names))
    }
}

/// Human-readable monomial using the given coordinate names.
pub fn format_mono(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    let pw = |base: String, e: u16| if e == 1 { base } else { format!("{base}^{e}") };
    for (i, &e) in m.sym.iter().enumerate() {
        if e > 0 {
            parts.push(pw(format!("s{}", i + 1), e));
        }
    }
    for (i, &e) in m.exps.iter().enumerate() {
        if e > 0 {
            parts.push(pw(names[i].clone(), e));
        }
    }
    let wedge: Vec<String> = m.wedge_indices().iter().map(|&i| format!("∂{}", names[i])).collect();
    if !wedge.is_empty() {
        parts.push(wedge.join("∧"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b11, 0b01), 0);
        // θ1 θ3 · θ2 = -θ1 θ2 θ3
        assert_eq!(wedge_sign(0b101, 0b010), -1);
        assert_eq!(wedge_sign(0b110, 0b001), 1);
    }

    #[test]
    fn degrees() {
        let m = Mono::new(vec![1, 0], vec![2, 0, 0], 0b11);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.shifted_degree(), 2);
        assert_eq!(Mono::one(0, 2).degree(), -1);
        assert_eq!(format_mono(&m, &["u".into(), "v".into(), "w".into()]), "s1 u^2 ∂u∧∂v");
    }
}
