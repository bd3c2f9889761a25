//! Words in the graded-symmetric algebra `Sym(V[1])` over basis keys.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::element::{BasisKey, GradedElement};
use super::scalar::Scalar;
use super::series::FormalSeries;

/// Sorts `factors` into canonical (ascending) order and returns the Koszul sign
/// of the reordering, or 0 when two equal odd factors meet.
pub fn canonicalize<B: BasisKey>(factors: &mut [B]) -> i32 {
    let mut sign = 1;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            if factors[j - 1].shifted_degree() & 1 != 0 && factors[j].shifted_degree() & 1 != 0 {
                sign = -sign;
            }
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in factors.windows(2) {
        if w[0] == w[1] && w[0].shifted_degree() & 1 != 0 {
            return 0;
        }
    }
    sign
}

/// A canonical monomial `x_1 ∨ … ∨ x_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymWord<B: BasisKey> {
    factors: Vec<B>,
}

impl<B: BasisKey> SymWord<B> {
    /// Canonical form and sign; `None` when the word vanishes.
    pub fn canonical(mut factors: Vec<B>) -> Option<(SymWord<B>, i32)> {
        match canonicalize(&mut factors) {
            0 => None,
            s => Some((SymWord { factors }, s)),
        }
    }

    pub fn factors(&self) -> &[B] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn shifted_degree(&self) -> i32 {
        self.factors.iter().map(BasisKey::shifted_degree).sum()
    }
}

/// A linear combination of canonical words.
#[derive(Clone, PartialEq, Eq)]
pub struct SymElement<B: BasisKey> {
    order: usize,
    terms: BTreeMap<Vec<B>, FormalSeries>,
}

impl<B: BasisKey> SymElement<B> {
    pub fn zero(order: usize) -> Self {
        SymElement { order, terms: BTreeMap::new() }
    }

    /// The unit `1 ∈ Sym^0`.
    pub fn unit(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.terms.insert(Vec::new(), FormalSeries::one(order));
        s
    }

    pub fn word(factors: Vec<B>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.add_word(factors, &FormalSeries::one(order), &Scalar::one());
        s
    }

    pub fn from_element(e: &GradedElement<B>) -> Self {
        let mut s = Self::zero(e.order());
        for (k, c) in e.iter() {
            s.terms.insert(vec![k.clone()], c.clone());
        }
        s
    }

    /// `e_1 ∨ … ∨ e_n`.
    pub fn product_of(elements: &[&GradedElement<B>], order: usize) -> Self {
        let mut acc = Self::unit(order);
        for e in elements {
            acc = acc.product(&Self::from_element(e));
        }
        acc
    }

    /// `e^{∨k}`.
    pub fn power(e: &GradedElement<B>, k: usize) -> Self {
        let f = Self::from_element(e);
        let mut acc = Self::unit(e.order());
        for _ in 0..k {
            acc = acc.product(&f);
        }
        acc
    }

    pub fn order(&self) -> usize {
        self.order
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<B>, &FormalSeries)> {
        self.terms.iter()
    }

    /// Adds `c · coeff · factors`, canonicalizing the word.
    pub fn add_word(&mut self, mut factors: Vec<B>, coeff: &FormalSeries, c: &Scalar) {
        assert_eq!(coeff.order(), self.order, "truncation orders differ");
        let s = canonicalize(&mut factors);
        if s == 0 || coeff.is_zero() {
            return;
        }
        let c = if s < 0 { -c } else { c.clone() };
        match self.terms.entry(factors) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(coeff, &c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.scale(&c));
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.order, other.order, "truncation orders differ");
        for (w, v) in &other.terms {
            let entry = self.terms.entry(w.clone()).or_insert_with(|| FormalSeries::zero(v.order()));
            entry.add_scaled(v, c);
            if entry.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    pub fn add_mul_series(&mut self, other: &Self, s: &FormalSeries) {
        for (w, v) in &other.terms {
            let prod = v * s;
            if prod.is_zero() {
                continue;
            }
            let entry = self.terms.entry(w.clone()).or_insert_with(|| FormalSeries::zero(prod.order()));
            *entry += &prod;
            if entry.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.order);
        out.add_scaled(self, c);
        out
    }

    /// Graded-commutative product.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_word(w, &(c1 * c2), &Scalar::one());
            }
        }
        out
    }

    /// Restriction to words of length `n`.
    pub fn arity(&self, n: usize) -> Self {
        SymElement {
            order: self.order,
            terms: self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Evaluates a multilinear map given on canonical words.
    pub fn apply<C: BasisKey>(&self, f: impl Fn(&[B]) -> GradedElement<C>) -> GradedElement<C> {
        let mut out = GradedElement::zero(self.order);
        for (w, c) in &self.terms {
            out.add_mul_series(&f(w), c);
        }
        out
    }

    /// Maps each word to a word-sum and adds the results.
    pub fn flat_map<C: BasisKey>(&self, f: impl Fn(&[B]) -> SymElement<C>) -> SymElement<C> {
        let mut out = SymElement::zero(self.order);
        for (w, c) in &self.terms {
            out.add_mul_series(&f(w), c);
        }
        out
    }

    /// The `Sym^1` part as an element.
    pub fn linear_part(&self) -> GradedElement<B> {
        GradedElement::from_terms(
            self.order,
            self.terms.iter().filter(|(w, _)| w.len() == 1).map(|(w, c)| (w[0].clone(), c.clone())),
        )
    }
}

impl<B: BasisKey> fmt::Debug for SymElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
