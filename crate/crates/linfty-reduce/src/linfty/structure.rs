//! Curved DGLAs and the L∞-structures they induce on `Sym(V[1])`.
//!
//! Conventions: `Q_0(1) = −R`, `Q_1 = −d`, `Q_2(γ∨μ) = −(−1)^{|γ|}[γ, μ]` with `|γ|`
//! the shifted degree.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::scalar::{factorial, frac};
use crate::graded::sign::{koszul_sign_unchecked, shuffles};
use crate::graded::{BasisKey, GradedElement, Scalar, SymElement};
use crate::poly::{schouten, Mono, PolyMultivector};

pub type LinearMap<A, B> = Arc<dyn Fn(&A) -> GradedElement<B> + Send + Sync>;
pub type BilinearMap<B> = Arc<dyn Fn(&B, &B) -> GradedElement<B> + Send + Sync>;
/// Graded-symmetric multilinear map, evaluated on canonical words.
pub type WordMap<A, B> = Arc<dyn Fn(&[A]) -> GradedElement<B> + Send + Sync>;

/// A curved DGLA `(V, R, d, [·,·])` given on basis keys.
#[derive(Clone)]
pub struct Dgla<B: BasisKey> {
    pub order: usize,
    pub curvature: GradedElement<B>,
    /// `None` means `d = 0`.
    pub differential: Option<LinearMap<B, B>>,
    pub bracket: BilinearMap<B>,
}

impl<B: BasisKey> Dgla<B> {
    pub fn new(order: usize, bracket: BilinearMap<B>) -> Self {
        Dgla { order, curvature: GradedElement::zero(order), differential: None, bracket }
    }

    /// Differential `[μ, ·]`.
    pub fn inner_differential(mu: &GradedElement<B>, bracket: &BilinearMap<B>) -> LinearMap<B, B> {
        let mu = mu.clone();
        let bracket = bracket.clone();
        Arc::new(move |k: &B| {
            let mut out = GradedElement::zero(mu.order());
            for (a, c) in mu.iter() {
                out.add_mul_series(&bracket(a, k), c);
            }
            out
        })
    }

    pub fn with_differential(mut self, d: LinearMap<B, B>) -> Self {
        self.differential = Some(d);
        self
    }

    pub fn with_curvature(mut self, r: GradedElement<B>) -> Self {
        self.curvature = r;
        self
    }

    pub fn d(&self, x: &GradedElement<B>) -> GradedElement<B> {
        match &self.differential {
            Some(d) => x.map_linear(|k| d(k)),
            None => GradedElement::zero(x.order()),
        }
    }

    pub fn bracket(&self, x: &GradedElement<B>, y: &GradedElement<B>) -> GradedElement<B> {
        let mut out = GradedElement::zero(x.order());
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_mul_series(&(self.bracket)(a, b), &(ca * cb));
            }
        }
        out
    }

    /// `R + dπ + ½[π, π]`.
    pub fn mc_residual(&self, pi: &GradedElement<B>) -> GradedElement<B> {
        let mut r = self.curvature.clone();
        r += &self.d(pi);
        r.add_scaled(&self.bracket(pi, pi), &frac(1, 2));
        r
    }

    pub fn mc_check(&self, pi: &GradedElement<B>) -> bool {
        self.mc_residual(pi).is_zero()
    }

    /// Curvature `R + dπ + ½[π,π]`, differential `d + [π, ·]`.
    pub fn twist(&self, pi: &GradedElement<B>) -> Dgla<B> {
        let curvature = self.mc_residual(pi);
        let old = self.differential.clone();
        let ad = Self::inner_differential(pi, &self.bracket);
        let differential: LinearMap<B, B> = Arc::new(move |k: &B| match &old {
            Some(d) => &d(k) + &ad(k),
            None => ad(k),
        });
        Dgla { order: self.order, curvature, differential: Some(differential), bracket: self.bracket.clone() }
    }
}

impl Dgla<Mono> {
    /// Polynomial multivector fields with the Schouten bracket.
    pub fn polyvector(order: usize) -> Dgla<Mono> {
        let bracket: BilinearMap<Mono> = Arc::new(move |a: &Mono, b: &Mono| {
            schouten(&PolyMultivector::basis(a.clone(), order), &PolyMultivector::basis(b.clone(), order))
        });
        Dgla::new(order, bracket)
    }
}

/// An L∞-structure `{Q_k}` on `V[1]` up to an arity cap.
#[derive(Clone)]
pub struct LinftyStructure<B: BasisKey> {
    pub order: usize,
    pub arity_cap: usize,
    /// `Q_0(1)`.
    pub q0: GradedElement<B>,
    maps: Vec<Option<WordMap<B, B>>>,
    /// All `Q_k` beyond the listed ones vanish.
    finite: bool,
    dgla: Option<Dgla<B>>,
}

impl<B: BasisKey> LinftyStructure<B> {
    pub fn from_dgla(dgla: Dgla<B>, arity_cap: usize) -> Self {
        let q1: Option<WordMap<B, B>> = dgla.differential.clone().map(|d| {
            let f: WordMap<B, B> = Arc::new(move |w: &[B]| -d(&w[0]));
            f
        });
        let br = dgla.bracket.clone();
        let q2: WordMap<B, B> = Arc::new(move |w: &[B]| {
            let v = br(&w[0], &w[1]);
            if w[0].shifted_degree() & 1 == 0 {
                -v
            } else {
                v
            }
        });
        LinftyStructure {
            order: dgla.order,
            arity_cap,
            q0: -&dgla.curvature,
            maps: vec![q1, Some(q2)],
            finite: true,
            dgla: Some(dgla),
        }
    }

    /// A structure from explicit maps `Q_1..Q_K`; maps beyond `K` are unknown.
    pub fn from_maps(order: usize, q0: GradedElement<B>, maps: Vec<Option<WordMap<B, B>>>, finite: bool) -> Self {
        LinftyStructure { order, arity_cap: maps.len(), q0, maps, finite, dgla: None }
    }

    pub fn dgla(&self) -> Option<&Dgla<B>> {
        self.dgla.as_ref()
    }

    pub fn is_flat(&self) -> bool {
        self.q0.is_zero()
    }

    /// Whether `Q_k` is known to vanish.
    pub fn vanishes(&self, k: usize) -> bool {
        match k {
            0 => self.q0.is_zero(),
            _ => match self.maps.get(k - 1) {
                Some(m) => m.is_none(),
                None => self.finite,
            },
        }
    }

    pub fn q(&self, k: usize, word: &[B]) -> Result<GradedElement<B>> {
        if k == 0 {
            return Ok(self.q0.clone());
        }
        if k > self.arity_cap {
            return Err(Error::Capacity(format!("Q_{k} requested with arity cap {}", self.arity_cap)));
        }
        Ok(match self.maps.get(k - 1) {
            Some(Some(m)) => m(word),
            _ => GradedElement::zero(self.order),
        })
    }

    /// `Q_k` on a word-sum.
    pub fn q_on(&self, k: usize, w: &SymElement<B>) -> Result<GradedElement<B>> {
        if k == 0 {
            return Ok(self.q0.clone());
        }
        if self.vanishes(k) {
            return Ok(GradedElement::zero(w.order()));
        }
        if k > self.arity_cap {
            return Err(Error::Capacity(format!("Q_{k} requested with arity cap {}", self.arity_cap)));
        }
        let m = self.maps[k - 1].clone().unwrap();
        Ok(w.arity(k).apply(|word| m(word)))
    }

    /// Twist by `π`: `Q^π_k(w) = Σ_j 1/j! Q_{k+j}(π^{∨j} ∨ w)`.
    pub fn twist(&self, pi: &GradedElement<B>) -> Result<LinftyStructure<B>> {
        if let Some(d) = &self.dgla {
            return Ok(LinftyStructure::from_dgla(d.twist(pi), self.arity_cap));
        }
        let mut powers = vec![SymElement::unit(self.order)];
        let mut j = 0;
        loop {
            j += 1;
            let p = powers[j - 1].product(&SymElement::from_element(pi));
            if p.is_zero() {
                break;
            }
            if j > self.arity_cap {
                if !self.finite {
                    return Err(Error::Capacity(format!(
                        "twisting series does not terminate below arity {}: π^{{∨{j}}} ≠ 0",
                        self.arity_cap
                    )));
                }
                break;
            }
            powers.push(p);
        }
        let base = self.clone();
        let powers = Arc::new(powers);
        let q0 = {
            let mut acc = GradedElement::zero(self.order);
            for (j, p) in powers.iter().enumerate() {
                acc.add_scaled(&self.q_on(j, p)?, &factorial(j).recip());
            }
            acc
        };
        let mut maps: Vec<Option<WordMap<B, B>>> = Vec::new();
        for k in 1..=self.arity_cap {
            let base = base.clone();
            let powers = powers.clone();
            let f: WordMap<B, B> = Arc::new(move |w: &[B]| {
                let ws = SymElement::word(w.to_vec(), base.order);
                let mut acc = GradedElement::zero(base.order);
                for (j, p) in powers.iter().enumerate() {
                    if k + j > base.arity_cap {
                        break;
                    }
                    let arg = p.product(&ws);
                    acc.add_scaled(&base.q_on(k + j, &arg).expect("within cap"), &factorial(j).recip());
                }
                acc
            });
            maps.push(Some(f));
        }
        Ok(LinftyStructure { order: self.order, arity_cap: self.arity_cap, q0, maps, finite: self.finite, dgla: None })
    }

    /// `Σ_k 1/k! Q_k(π^{∨k})`; zero iff `π` is Maurer–Cartan.
    pub fn mc_residual(&self, pi: &GradedElement<B>) -> Result<GradedElement<B>> {
        let mut acc = self.q0.clone();
        let mut power = SymElement::unit(self.order);
        for k in 1.. {
            power = power.product(&SymElement::from_element(pi));
            if power.is_zero() {
                break;
            }
            if k > self.arity_cap {
                if self.finite {
                    break;
                }
                return Err(Error::Capacity(format!("Maurer–Cartan series does not terminate below arity {k}")));
            }
            acc.add_scaled(&self.q_on(k, &power)?, &factorial(k).recip());
        }
        Ok(acc)
    }

    pub fn mc_check(&self, pi: &GradedElement<B>) -> Result<bool> {
        Ok(self.mc_residual(pi)?.is_zero())
    }
}

/// `Q^i_n(w) = Σ_{Sh(n+1−i, i−1)} ε Q_{n+1−i}(x_σ(1) ∨ …) ∨ x_σ(n+2−i) ∨ … ∨ x_σ(n)`.
/// For `i = n + 1` this is `Q_0 ∨ w`.
pub fn coderivation_component<B: BasisKey>(
    l: &LinftyStructure<B>,
    n: usize,
    i: usize,
    word: &[B],
) -> Result<SymElement<B>> {
    assert_eq!(word.len(), n, "word length must equal the arity");
    if i == 0 || i > n + 1 {
        return Err(Error::Argument(format!("component Q^{i}_{n} does not exist")));
    }
    let k = n + 1 - i;
    if k > l.arity_cap {
        return Err(Error::Capacity(format!("Q_{k} exceeds arity cap {}", l.arity_cap)));
    }
    let order = l.order;
    if l.vanishes(k) {
        return Ok(SymElement::zero(order));
    }
    if k == 0 {
        return Ok(SymElement::from_element(&l.q0).product(&SymElement::word(word.to_vec(), order)));
    }
    let degrees: Vec<i32> = word.iter().map(BasisKey::shifted_degree).collect();
    let mut out = SymElement::zero(order);
    for sigma in shuffles(k, n - k) {
        let eps = koszul_sign_unchecked(&sigma, &degrees);
        let head: Vec<B> = sigma[..k].iter().map(|&j| word[j].clone()).collect();
        let val = l.q(k, &head)?;
        if val.is_zero() {
            continue;
        }
        let tail: Vec<B> = sigma[k..].iter().map(|&j| word[j].clone()).collect();
        let prod = SymElement::from_element(&val).product(&SymElement::word(tail, order));
        out.add_scaled(&prod, &Scalar::from_integer(eps.into()));
    }
    Ok(out)
}

/// Linear extension of [`coderivation_component`] to word-sums of arity `n`.
pub fn coderivation_component_on<B: BasisKey>(
    l: &LinftyStructure<B>,
    n: usize,
    i: usize,
    w: &SymElement<B>,
) -> Result<SymElement<B>> {
    let mut out = SymElement::zero(w.order());
    for (word, c) in w.iter() {
        if word.len() == n {
            out.add_mul_series(&coderivation_component(l, n, i, word)?, c);
        }
    }
    Ok(out)
}

/// The full coderivation `Q` on a word-sum.
pub fn coderivation<B: BasisKey>(l: &LinftyStructure<B>, w: &SymElement<B>) -> Result<SymElement<B>> {
    let mut out = SymElement::zero(w.order());
    for (word, c) in w.iter() {
        let n = word.len();
        for i in 1..=n + 1 {
            if n + 1 - i > l.arity_cap {
                continue;
            }
            if l.vanishes(n + 1 - i) {
                continue;
            }
            out.add_mul_series(&coderivation_component(l, n, i, word)?, c);
        }
    }
    Ok(out)
}
