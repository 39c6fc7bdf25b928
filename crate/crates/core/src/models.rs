//! Cohomology models of sphere-bundle total spaces and of the fibrewise
//! product of `r` copies of one.
//!
//! For a rank-`q` bundle `xi = eta + eps` with a trivial line summand, the
//! total space of the unit sphere bundle has cohomology
//! `H*(B)[u] / (u^2 - c u)` with `deg u = q-1`, where `c` is the Euler
//! class of `eta` integrally and the Stiefel-Whitney class `w_{q-1}(xi)`
//! mod 2. Iterating the same presentation along the tower of forgetful
//! projections gives a model of the `r`-fold fibrewise product with extra
//! degree-(q-1) generators `v_1, ..., v_{r-1}`, relations
//! `v_i^2 = e' v_i`, and a diagonal-restriction homomorphism determined by
//! `v_i -> e` where `e` is the Euler class of the orthonormal-2-frame
//! bundle sitting over the sphere bundle's total space (`e = e(eta)` for
//! even `q` and `-e(eta) + 2u` for odd `q`; mod 2 it is `w_{q-1}(xi)`).
//!
//! The cup-length of the kernel of that homomorphism is what lower-bounds
//! the sequential complexity; [`ErBModel::kernel_cup_length_oracle`]
//! computes it by brute-force expansion of products of the kernel
//! generators, independently of the closed-form height formulas it is
//! tested against.

use std::sync::Arc;

use thiserror::Error;

use crate::bundles::{BundleError, BundleSpec};
use crate::graded::{CoefficientRing, GradedClass, RawTerms, RingError, RingModel};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("section required: the bundle has no trivial line summand")]
    SectionRequired,
    #[error("fibrewise products need r >= 2, got {0}")]
    InvalidR(usize),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `H*` of the total space of the unit sphere bundle of a bundle with a
/// section: a free module over the base ring on `{1, u}`.
#[derive(Clone, Debug)]
pub struct SphereBundleRing {
    spec: BundleSpec,
    coefficients: CoefficientRing,
    base_ring: Arc<RingModel>,
    ring: Arc<RingModel>,
    q: usize,
}

impl SphereBundleRing {
    /// Build the model. Integral coefficients require the `eta + eps`
    /// decomposition with orientable complement over a torsion-free base;
    /// mod-2 coefficients require only a section.
    pub fn build(spec: &BundleSpec, coefficients: CoefficientRing) -> Result<Self, ModelError> {
        if !spec.has_section() {
            return Err(ModelError::SectionRequired);
        }
        let q = spec.rank();
        let relation_in_base = match coefficients {
            CoefficientRing::Integers => spec.euler_class_eta()?,
            CoefficientRing::ModTwo => spec.sw_class(q - 1),
        };
        let base_ring = spec.base().cohomology_ring(coefficients)?;
        let top = spec.base().dim() + (q - 1);
        let ring = extend_by_square_linear(&base_ring, "u", q - 1, &relation_in_base, top)?;
        Ok(SphereBundleRing {
            spec: spec.clone(),
            coefficients,
            base_ring,
            ring,
            q,
        })
    }

    pub fn spec(&self) -> &BundleSpec {
        &self.spec
    }

    pub fn coefficients(&self) -> CoefficientRing {
        self.coefficients
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn base_ring(&self) -> &Arc<RingModel> {
        &self.base_ring
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn base_dim(&self) -> usize {
        self.spec.base().dim()
    }

    /// The fibre-restricting generator `u`.
    pub fn u(&self) -> GradedClass {
        let index = self.base_ring.generators().len();
        self.ring.generator_class(index)
    }

    /// The class `c` in the defining relation `u^2 = c u`.
    pub fn relation_class(&self) -> GradedClass {
        let in_base = match self.coefficients {
            CoefficientRing::Integers => self
                .spec
                .euler_class_eta()
                .expect("checked at construction"),
            CoefficientRing::ModTwo => self.spec.sw_class(self.q - 1),
        };
        in_base.lifted(&self.ring).expect("base embeds")
    }

    /// Euler class of the orthonormal-2-frame bundle over this total
    /// space (its mod-2 reduction when the model is mod 2): `e(eta)` for
    /// even rank, `-e(eta) + 2u` for odd rank, `w_{q-1}(xi)` mod 2.
    pub fn euler_stiefel(&self) -> GradedClass {
        let c = self.relation_class();
        match self.coefficients {
            CoefficientRing::ModTwo => c,
            CoefficientRing::Integers => {
                if self.q % 2 == 0 {
                    c
                } else {
                    self.u().scale_i64(2).sub(&c)
                }
            }
        }
    }
}

/// Model of the fibrewise `r`-fold product of the sphere bundle's total
/// space, with the diagonal-restriction homomorphism.
#[derive(Clone, Debug)]
pub struct ErBModel {
    sphere: SphereBundleRing,
    r: usize,
    ring: Arc<RingModel>,
}

impl ErBModel {
    pub fn build(sphere: SphereBundleRing, r: usize) -> Result<Self, ModelError> {
        if r < 2 {
            return Err(ModelError::InvalidR(r));
        }
        let q = sphere.q();
        let top = r * (q - 1) + sphere.base_dim();
        // the v-free part of the model reproduces the sphere-bundle ring:
        // same generators and relations, truncation at the larger degree
        // is vacuous there because exponent caps already bound it
        let relation_in_base = match sphere.coefficients() {
            CoefficientRing::Integers => sphere.spec().euler_class_eta()?,
            CoefficientRing::ModTwo => sphere.spec().sw_class(q - 1),
        };
        let mut ring =
            extend_by_square_linear(sphere.base_ring(), "u", q - 1, &relation_in_base, top)?;
        for i in 1..r {
            // rewrite form of v_i^2 = e(eta'_i) v_i: in every case the
            // product reduces to (pullback of the frame-bundle Euler
            // class) * v_i, which is v-free times v_i
            let euler = euler_stiefel_in(&ring, &sphere)?;
            ring = extend_by_square_linear(&ring, &format!("v{i}"), q - 1, &euler, top)?;
        }
        Ok(ErBModel { sphere, r, ring })
    }

    pub fn sphere(&self) -> &SphereBundleRing {
        &self.sphere
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> usize {
        self.sphere.q()
    }

    pub fn coefficients(&self) -> CoefficientRing {
        self.sphere.coefficients()
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn u(&self) -> GradedClass {
        let index = self.sphere.base_ring().generators().len();
        self.ring.generator_class(index)
    }

    pub fn v(&self, i: usize) -> GradedClass {
        assert!((1..self.r).contains(&i), "v_i defined for 1 <= i <= r-1");
        let index = self.sphere.base_ring().generators().len() + i;
        self.ring.generator_class(index)
    }

    /// Pullback of the frame-bundle Euler class to this model (v-free).
    pub fn euler_stiefel(&self) -> GradedClass {
        euler_stiefel_in(&self.ring, &self.sphere).expect("built from the same data")
    }

    /// `e(eta'_i)`: the Euler class of the bundle whose sphere bundle is
    /// the i-th level of the tower. Even rank and mod-2 models: the
    /// pullback of the frame-bundle Euler class. Odd rank integrally:
    /// `2 v_i - (pullback)`.
    pub fn eta_prime(&self, i: usize) -> GradedClass {
        let pullback = self.euler_stiefel();
        match self.coefficients() {
            CoefficientRing::ModTwo => pullback,
            CoefficientRing::Integers => {
                if self.q() % 2 == 0 {
                    pullback
                } else {
                    self.v(i).scale_i64(2).sub(&pullback)
                }
            }
        }
    }

    /// Generators `v_i - e(eta'_i)` of the kernel of the diagonal
    /// restriction.
    pub fn kernel_ideal_generators(&self) -> Vec<GradedClass> {
        (1..self.r)
            .map(|i| self.v(i).sub(&self.eta_prime(i)))
            .collect()
    }

    /// The algebra homomorphism induced by restricting to the diagonal:
    /// classes pulled back along the first projection map to themselves
    /// and every `v_i` maps to the frame-bundle Euler class.
    pub fn diagonal_pullback(&self, class: &GradedClass) -> GradedClass {
        let target = self.sphere.ring();
        let base_arity = self.sphere.base_ring().generators().len();
        let images: Vec<GradedClass> = (0..self.ring.generators().len())
            .map(|idx| {
                if idx < base_arity {
                    target.generator_class(idx)
                } else if idx == base_arity {
                    self.sphere.u()
                } else {
                    self.sphere.euler_stiefel()
                }
            })
            .collect();
        let mut out = target.zero();
        for (mono, coeff) in class.terms() {
            let mut term = target.one().scale(coeff);
            for (idx, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[idx].pow(e as usize));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exhaustive cup-length of the kernel ideal: the largest total
    /// exponent `a_1 + ... + a_{r-1}` such that the product of powers of
    /// the kernel generators is nonzero. Factors have degree `q-1`, so the
    /// search is capped by `top_degree/(q-1) + 1`.
    pub fn kernel_cup_length_oracle(&self) -> usize {
        let factors = self.kernel_ideal_generators();
        let budget = self.ring.top_degree() / (self.q() - 1) + 1;
        let mut best = 0;
        let one = self.ring.one();
        search_products(&factors, 0, budget, &one, 0, &mut best);
        best
    }
}

fn search_products(
    factors: &[GradedClass],
    index: usize,
    budget: usize,
    product: &GradedClass,
    length: usize,
    best: &mut usize,
) {
    if length > *best {
        *best = length;
    }
    if index == factors.len() || budget == 0 {
        return;
    }
    // exponent 0 for this factor
    search_products(factors, index + 1, budget, product, length, best);
    let mut acc = product.clone();
    for extra in 1..=budget {
        acc = acc.mul(&factors[index]);
        if acc.is_zero() {
            // more powers of anything keep it zero
            break;
        }
        search_products(factors, index + 1, budget - extra, &acc, length + extra, best);
    }
}

/// Extend `ring` by a generator `g` with the relation `g^2 = c g`, where
/// `c` lives in `ring` (possibly zero, else homogeneous of g's degree).
fn extend_by_square_linear(
    ring: &Arc<RingModel>,
    name: &str,
    degree: usize,
    c: &GradedClass,
    new_top: usize,
) -> Result<Arc<RingModel>, RingError> {
    let c_here = if Arc::ptr_eq(c.ring(), ring) || c.ring().as_ref() == ring.as_ref() {
        c.clone()
    } else {
        c.lifted(ring)?
    };
    let new_index = ring.generators().len();
    let rhs: RawTerms = c_here
        .terms()
        .map(|(m, coeff)| {
            let mut exps = m.exponents().to_vec();
            exps.push(1); // ... times g itself
            debug_assert_eq!(exps.len(), new_index + 1);
            (exps, coeff.clone())
        })
        .collect();
    ring.extended(name, degree, 2, rhs, new_top)
}

/// The frame-bundle Euler class (or its mod-2 stand-in) as a class of the
/// given model, which must extend the sphere-bundle presentation.
fn euler_stiefel_in(
    ring: &Arc<RingModel>,
    sphere: &SphereBundleRing,
) -> Result<GradedClass, ModelError> {
    let q = sphere.q();
    let in_base = match sphere.coefficients() {
        CoefficientRing::Integers => sphere.spec().euler_class_eta()?,
        CoefficientRing::ModTwo => sphere.spec().sw_class(q - 1),
    };
    let lifted = in_base.lifted(ring)?;
    match sphere.coefficients() {
        CoefficientRing::ModTwo => Ok(lifted),
        CoefficientRing::Integers => {
            if q % 2 == 0 {
                Ok(lifted)
            } else {
                let u_index = sphere.base_ring().generators().len();
                let u = ring.generator_class(u_index);
                Ok(u.scale_i64(2).sub(&lifted))
            }
        }
    }
}
