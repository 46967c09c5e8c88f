//! Exponential-trigonometric field algebra.
//!
//! Perturbation fields in the half-plane y ≤ 0 are finite sums of terms
//! `coef · y^ypow · e^{rate·y} · trig(harm·q·x)` with `trig ∈ {cos, sin}`.
//! All calculus on this representation — ∂x, ∂y, products, Laplacian,
//! divergence, the full force-balance operator — is exact term rewriting,
//! so PDE and boundary-condition residuals of the hand-derived coefficient
//! tables can be evaluated analytically: a nonzero residual localizes a
//! transcription error rather than a discretization artifact.

use crate::params::ModelParams;

/// Absolute tolerance under which two decay rates are treated as the same
/// exponential when merging terms (rates here are O(1)–O(10²)).
const RATE_MERGE_TOL: f64 = 1e-9;

/// Spec'd compactness bound for assembled named fields (not for transient
/// products, which may be wider); see [`ExpTrigField::assert_compact`].
pub const MAX_NAMED_TERMS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Trig {
    Cos,
    Sin,
}

/// One field term: `coef · y^ypow · e^{rate·y} · trig(harm·q·x)`.
#[derive(Clone, Copy, Debug)]
pub struct Term {
    pub coef: f64,
    pub ypow: u32,
    pub rate: f64,
    pub harm: u32,
    pub trig: Trig,
}

/// A scalar field on the half-plane: finite exp-trig sum over harmonics of a
/// base wavenumber `q`. Every term decays as y → −∞ (`rate > 0`).
#[derive(Clone, Debug)]
pub struct ExpTrigField {
    q: f64,
    terms: Vec<Term>,
}

impl ExpTrigField {
    /// Empty (identically zero) field at base wavenumber `q`.
    pub fn zero(q: f64) -> Self {
        assert!(q > 0.0, "base wavenumber must be positive, got {q}");
        ExpTrigField { q, terms: Vec::new() }
    }

    /// Build from raw terms; enforces the decay invariant.
    pub fn new(q: f64, terms: Vec<Term>) -> Self {
        assert!(q > 0.0, "base wavenumber must be positive, got {q}");
        for t in &terms {
            assert!(
                t.rate > 0.0,
                "every term must decay as y -> -inf; got rate {}",
                t.rate
            );
            assert!(t.coef.is_finite() && t.rate.is_finite());
        }
        let mut f = ExpTrigField { q, terms };
        f.simplify();
        f
    }

    /// Single-term convenience constructor.
    pub fn term(q: f64, coef: f64, ypow: u32, rate: f64, harm: u32, trig: Trig) -> Self {
        ExpTrigField::new(
            q,
            vec![Term {
                coef,
                ypow,
                rate,
                harm,
                trig,
            }],
        )
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Assert the spec'd compactness bound for a named (assembled) field.
    pub fn assert_compact(&self, label: &str) {
        assert!(
            self.terms.len() <= MAX_NAMED_TERMS,
            "{label} has {} terms, more than the {MAX_NAMED_TERMS}-term bound",
            self.terms.len()
        );
    }

    /// Merge terms that share (harm, trig, ypow) and — up to a small absolute
    /// tolerance — the decay rate; drop exact zeros and sin terms at the zero
    /// harmonic. Deterministic: terms end up sorted.
    fn simplify(&mut self) {
        self.terms
            .retain(|t| !(t.trig == Trig::Sin && t.harm == 0));
        self.terms.sort_by(|a, b| {
            (a.harm, a.trig, a.ypow)
                .cmp(&(b.harm, b.trig, b.ypow))
                .then(a.rate.total_cmp(&b.rate))
        });
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(m)
                    if m.harm == t.harm
                        && m.trig == t.trig
                        && m.ypow == t.ypow
                        && (m.rate - t.rate).abs() <= RATE_MERGE_TOL =>
                {
                    m.coef += t.coef;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coef != 0.0);
        self.terms = merged;
    }

    fn assert_same_family(&self, other: &ExpTrigField) {
        assert!(
            self.q.to_bits() == other.q.to_bits(),
            "field base wavenumbers differ: {} vs {}",
            self.q,
            other.q
        );
    }

    pub fn add(&self, other: &ExpTrigField) -> ExpTrigField {
        self.assert_same_family(other);
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        let mut f = ExpTrigField { q: self.q, terms };
        f.simplify();
        f
    }

    pub fn sub(&self, other: &ExpTrigField) -> ExpTrigField {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> ExpTrigField {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coef: t.coef * s, ..*t })
            .collect();
        let mut f = ExpTrigField { q: self.q, terms };
        f.simplify();
        f
    }

    /// Analytic ∂/∂x: trig rotation with the harmonic wavenumber factor.
    pub fn dx(&self) -> ExpTrigField {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.harm == 0 {
                continue;
            }
            let k = f64::from(t.harm) * self.q;
            let (coef, trig) = match t.trig {
                Trig::Cos => (-t.coef * k, Trig::Sin),
                Trig::Sin => (t.coef * k, Trig::Cos),
            };
            terms.push(Term { coef, trig, ..*t });
        }
        let mut f = ExpTrigField { q: self.q, terms };
        f.simplify();
        f
    }

    /// Analytic ∂/∂y: product rule on `y^ypow · e^{rate·y}`.
    pub fn dy(&self) -> ExpTrigField {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coef: t.coef * t.rate,
                ..*t
            });
            if t.ypow > 0 {
                terms.push(Term {
                    coef: t.coef * f64::from(t.ypow),
                    ypow: t.ypow - 1,
                    ..*t
                });
            }
        }
        let mut f = ExpTrigField { q: self.q, terms };
        f.simplify();
        f
    }

    pub fn laplacian(&self) -> ExpTrigField {
        self.dx().dx().add(&self.dy().dy())
    }

    /// Exact pointwise product: rates and y-powers add, trig products expand
    /// by the angle-sum identities into the |m1−m2| and m1+m2 harmonics.
    pub fn mul(&self, other: &ExpTrigField) -> ExpTrigField {
        self.assert_same_family(other);
        let mut terms = Vec::with_capacity(2 * self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let coef = a.coef * b.coef;
                let ypow = a.ypow + b.ypow;
                let rate = a.rate + b.rate;
                let lo = i64::from(a.harm) - i64::from(b.harm);
                let hi = a.harm + b.harm;
                let lo_abs = lo.unsigned_abs() as u32;
                let parts: [(f64, u32, Trig); 2] = match (a.trig, b.trig) {
                    (Trig::Cos, Trig::Cos) => {
                        [(0.5, lo_abs, Trig::Cos), (0.5, hi, Trig::Cos)]
                    }
                    (Trig::Sin, Trig::Sin) => {
                        [(0.5, lo_abs, Trig::Cos), (-0.5, hi, Trig::Cos)]
                    }
                    (Trig::Sin, Trig::Cos) => {
                        let sgn = if lo >= 0 { 0.5 } else { -0.5 };
                        [(0.5, hi, Trig::Sin), (sgn, lo_abs, Trig::Sin)]
                    }
                    (Trig::Cos, Trig::Sin) => {
                        let sgn = if lo <= 0 { 0.5 } else { -0.5 };
                        [(0.5, hi, Trig::Sin), (sgn, lo_abs, Trig::Sin)]
                    }
                };
                for (w, harm, trig) in parts {
                    terms.push(Term {
                        coef: coef * w,
                        ypow,
                        rate,
                        harm,
                        trig,
                    });
                }
            }
        }
        let mut f = ExpTrigField { q: self.q, terms };
        f.simplify();
        f
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut v = 0.0;
        for t in &self.terms {
            let phase = f64::from(t.harm) * self.q * x;
            let tr = match t.trig {
                Trig::Cos => phase.cos(),
                Trig::Sin => phase.sin(),
            };
            v += t.coef * y.powi(t.ypow as i32) * (t.rate * y).exp() * tr;
        }
        v
    }

    /// Fourier coefficients of the y = 0 trace, merged per (harmonic, trig).
    /// Terms with ypow ≥ 1 vanish on the boundary.
    pub fn boundary(&self) -> Vec<(u32, Trig, f64)> {
        let mut out: Vec<(u32, Trig, f64)> = Vec::new();
        for t in &self.terms {
            if t.ypow > 0 {
                continue;
            }
            match out.iter_mut().find(|(m, tr, _)| *m == t.harm && *tr == t.trig) {
                Some((_, _, c)) => *c += t.coef,
                None => out.push((t.harm, t.trig, t.coef)),
            }
        }
        out.retain(|&(_, _, c)| c != 0.0);
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out
    }

    /// Boundary Fourier coefficient of one (harmonic, trig) pair.
    pub fn bcoef(&self, harm: u32, trig: Trig) -> f64 {
        self.boundary()
            .iter()
            .find(|&&(m, t, _)| m == harm && t == trig)
            .map_or(0.0, |&(_, _, c)| c)
    }

    /// Largest |value| over a sample point set.
    pub fn max_abs_on(&self, points: &[(f64, f64)]) -> f64 {
        points
            .iter()
            .map(|&(x, y)| self.eval(x, y).abs())
            .fold(0.0, f64::max)
    }
}

/// A two-component field (x- and y-components share the base wavenumber).
#[derive(Clone, Debug)]
pub struct VectorField {
    pub x: ExpTrigField,
    pub y: ExpTrigField,
}

impl VectorField {
    pub fn new(x: ExpTrigField, y: ExpTrigField) -> Self {
        x.assert_same_family(&y);
        VectorField { x, y }
    }

    pub fn zero(q: f64) -> Self {
        VectorField {
            x: ExpTrigField::zero(q),
            y: ExpTrigField::zero(q),
        }
    }

    pub fn q(&self) -> f64 {
        self.x.q()
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            x: self.x.add(&other.x),
            y: self.y.add(&other.y),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            x: self.x.sub(&other.x),
            y: self.y.sub(&other.y),
        }
    }

    pub fn scale(&self, s: f64) -> VectorField {
        VectorField {
            x: self.x.scale(s),
            y: self.y.scale(s),
        }
    }

    pub fn divergence(&self) -> ExpTrigField {
        self.x.dx().add(&self.y.dy())
    }

    /// Apply the force-balance operator μ(Δv + ∇ div v) − ξ v componentwise.
    pub fn force_balance(&self, p: &ModelParams) -> VectorField {
        let d = self.divergence();
        VectorField {
            x: self
                .x
                .laplacian()
                .add(&d.dx())
                .scale(p.mu)
                .add(&self.x.scale(-p.xi)),
            y: self
                .y
                .laplacian()
                .add(&d.dy())
                .scale(p.mu)
                .add(&self.y.scale(-p.xi)),
        }
    }

    /// Divergence of the outer product, ∂_j (a_i b_j), as a vector field.
    pub fn tensor_divergence(a: &VectorField, b: &VectorField) -> VectorField {
        let rx = a.x.mul(&b.x).dx().add(&a.x.mul(&b.y).dy());
        let ry = a.y.mul(&b.x).dx().add(&a.y.mul(&b.y).dy());
        VectorField { x: rx, y: ry }
    }

    /// Boundary trace of the shear stress μ(∂x v_y + ∂y v_x).
    pub fn shear_trace(&self, mu: f64) -> Vec<(u32, Trig, f64)> {
        self.y.dx().add(&self.x.dy()).scale(mu).boundary()
    }

    /// Boundary trace of the normal stress 2μ ∂y v_y.
    pub fn normal_trace(&self, mu: f64) -> Vec<(u32, Trig, f64)> {
        self.y.dy().scale(2.0 * mu).boundary()
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.x.eval(x, y), self.y.eval(x, y))
    }
}
