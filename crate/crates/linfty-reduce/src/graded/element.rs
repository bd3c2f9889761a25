//! Finite sums of basis keys with series coefficients.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::One;

use super::scalar::Scalar;
use super::series::FormalSeries;
use crate::error::{Error, Result};

/// A basis vector of a graded space. `degree` is unshifted.
pub trait BasisKey: Clone + Ord + Hash + Debug + Send + Sync + 'static {
    fn degree(&self) -> i32;

    /// Degree in the shifted space `V[1]`.
    fn shifted_degree(&self) -> i32 {
        self.degree() - 1
    }
}

/// Abstract basis vector `g_id` of a prescribed degree, for explicit finite complexes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen {
    pub degree: i32,
    pub id: u32,
}

impl BasisKey for Gen {
    fn degree(&self) -> i32 {
        self.degree
    }
}

impl Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.id)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedElement<B: BasisKey> {
    order: usize,
    terms: BTreeMap<B, FormalSeries>,
}

impl<B: BasisKey> GradedElement<B> {
    pub fn zero(order: usize) -> Self {
        GradedElement { order, terms: BTreeMap::new() }
    }

    pub fn term(key: B, coeff: FormalSeries) -> Self {
        let mut e = Self::zero(coeff.order());
        e.add_term(key, &coeff);
        e
    }

    pub fn basis(key: B, order: usize) -> Self {
        Self::term(key, FormalSeries::one(order))
    }

    pub fn scalar_term(key: B, c: Scalar, order: usize) -> Self {
        Self::term(key, FormalSeries::constant(c, order))
    }

    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (B, FormalSeries)>) -> Self {
        let mut e = Self::zero(order);
        for (k, c) in terms {
            e.add_term(k, &c);
        }
        e
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

    pub fn iter(&self) -> impl Iterator<Item = (&B, &FormalSeries)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &B) -> Option<&FormalSeries> {
        self.terms.get(key)
    }

    pub fn add_term(&mut self, key: B, coeff: &FormalSeries) {
        self.add_scaled_term(key, coeff, &Scalar::one());
    }

    pub fn add_scaled_term(&mut self, key: B, coeff: &FormalSeries, c: &Scalar) {
        assert_eq!(coeff.order(), self.order, "truncation orders differ");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(coeff, c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                let s = coeff.scale(c);
                if !s.is_zero() {
                    v.insert(s);
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add_scaled_term(k.clone(), v, c);
        }
    }

    /// `self += s * other` for a series `s`.
    pub fn add_mul_series(&mut self, other: &Self, s: &FormalSeries) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * s));
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::Argument(format!("truncation orders differ: {} vs {}", self.order, other.order)));
        }
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.order);
        out.add_scaled(self, c);
        out
    }

    pub fn mul_series(&self, s: &FormalSeries) -> Self {
        let mut out = Self::zero(self.order);
        out.add_mul_series(self, s);
        out
    }

    pub fn mul_hbar(&self, k: usize) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|(b, c)| (b.clone(), c.mul_hbar(k))))
    }

    /// Truncates or zero-pads every coefficient.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_terms(order, self.terms.iter().map(|(b, c)| (b.clone(), c.with_order(order))))
    }

    /// The common degree of all terms, `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(BasisKey::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        GradedElement {
            order: self.order,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Linear extension of a map defined on basis keys.
    pub fn map_linear<C: BasisKey>(&self, f: impl Fn(&B) -> GradedElement<C>) -> GradedElement<C> {
        let mut out = GradedElement::zero(self.order);
        for (k, c) in &self.terms {
            out.add_mul_series(&f(k), c);
        }
        out
    }

    /// Largest ħ-power needed to represent the coefficients; `None` for zero.
    pub fn min_valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(FormalSeries::valuation).min()
    }

    pub fn into_terms(self) -> BTreeMap<B, FormalSeries> {
        self.terms
    }
}

impl<B: BasisKey> Add for &GradedElement<B> {
    type Output = GradedElement<B>;
    fn add(self, rhs: &GradedElement<B>) -> GradedElement<B> {
        self.try_add(rhs).expect("element addition")
    }
}

impl<B: BasisKey> Sub for &GradedElement<B> {
    type Output = GradedElement<B>;
    fn sub(self, rhs: &GradedElement<B>) -> GradedElement<B> {
        assert_eq!(self.order, rhs.order, "truncation orders differ");
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl<B: BasisKey> Add for GradedElement<B> {
    type Output = GradedElement<B>;
    fn add(self, rhs: GradedElement<B>) -> GradedElement<B> {
        &self + &rhs
    }
}

impl<B: BasisKey> Sub for GradedElement<B> {
    type Output = GradedElement<B>;
    fn sub(self, rhs: GradedElement<B>) -> GradedElement<B> {
        &self - &rhs
    }
}

impl<B: BasisKey> Neg for &GradedElement<B> {
    type Output = GradedElement<B>;
    fn neg(self) -> GradedElement<B> {
        self.scale(&-Scalar::one())
    }
}

impl<B: BasisKey> Neg for GradedElement<B> {
    type Output = GradedElement<B>;
    fn neg(self) -> GradedElement<B> {
        -&self
    }
}

impl<B: BasisKey> AddAssign<&GradedElement<B>> for GradedElement<B> {
    fn add_assign(&mut self, rhs: &GradedElement<B>) {
        assert_eq!(self.order, rhs.order, "truncation orders differ");
        self.add_scaled(rhs, &Scalar::one());
    }
}

impl<B: BasisKey> SubAssign<&GradedElement<B>> for GradedElement<B> {
    fn sub_assign(&mut self, rhs: &GradedElement<B>) {
        assert_eq!(self.order, rhs.order, "truncation orders differ");
        self.add_scaled(rhs, &-Scalar::one());
    }
}

impl<B: BasisKey + Display> Display for GradedElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{k}")?;
        }
        Ok(())
    }
}

impl<B: BasisKey> Debug for GradedElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
