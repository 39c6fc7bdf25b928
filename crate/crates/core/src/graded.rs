//! Exact arithmetic in truncated graded-commutative rings.
//!
//! A [`RingModel`] is a finite presentation: an ordered list of generators
//! with positive degrees, one optional rewrite rule per generator of the
//! shape `g^k -> rhs` with `k >= 2`, and a top degree above which every
//! class is zero. Elements ([`GradedClass`]) are stored on the monomial
//! basis in fully rewritten normal form, so equality is literal term
//! comparison and a class is zero exactly when its term map is empty.
//!
//! Coefficients are arbitrary-precision integers; with
//! [`CoefficientRing::ModTwo`] every coefficient is normalized into {0, 1}
//! and signs disappear. Over the integers, products of homogeneous classes
//! follow the Koszul rule `a*b = (-1)^{|a||b|} b*a`, implemented by
//! counting transpositions of odd-degree generators when exponent vectors
//! are merged.
//!
//! The rule shape is deliberately narrow. Every right side must
//! * be homogeneous of the same degree as `g^k`,
//! * contain `g` with exponent `< k`,
//! * contain no generator added to the model after `g`,
//! * itself be in normal form.
//!
//! Under these constraints rewriting strictly decreases the reversed
//! exponent vector in lexicographic order, so normalization terminates,
//! and since the rules' leading generators are pairwise distinct the
//! normal form is confluent (checked property-style in the test suite).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gf2::{BitVec, RowSpace};

/// Coefficient domain for a ring model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CoefficientRing {
    /// Arbitrary-precision integers.
    Integers,
    /// The field with two elements; `a + a = 0` for every `a`.
    ModTwo,
}

/// Errors from ring construction and class arithmetic.
#[derive(Debug, Error)]
pub enum RingError {
    #[error("operands belong to different ring models")]
    MixedRings,
    #[error("rewrite rule for generator `{generator}` is malformed: {reason}")]
    BadRule { generator: String, reason: String },
    #[error("generator degree must be at least 1 (generator `{0}`)")]
    ZeroDegreeGenerator(String),
    #[error("class is not homogeneous of positive degree")]
    NotHomogeneous,
    #[error("operation requires mod-2 coefficients")]
    RequiresModTwo,
    #[error("no generator named `{0}` in this ring model")]
    UnknownGenerator(String),
}

/// Exponent vector over the model's generators, in construction order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    fn generator(arity: usize, index: usize, power: u16) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = power;
        Monomial(exps)
    }
}

/// Raw (exponents, coefficient) terms, before validation.
pub type RawTerms = Vec<(Vec<u16>, BigInt)>;

#[derive(Clone, Debug, PartialEq)]
struct Rule {
    /// Exponent on the left side: `g^power -> rhs`.
    power: u16,
    /// Normal-form right side, same degree as the left side.
    rhs: Vec<(Monomial, BigInt)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A finitely presented truncated graded-commutative ring.
#[derive(Debug, PartialEq)]
pub struct RingModel {
    coefficients: CoefficientRing,
    generators: Vec<Generator>,
    rules: Vec<Option<Rule>>,
    top_degree: usize,
}

/// Builder for [`RingModel`]; generators first, then rules, since a rule's
/// right side is expressed in the exponents of the finished generator list.
pub struct RingModelBuilder {
    coefficients: CoefficientRing,
    generators: Vec<Generator>,
    rules: Vec<Option<(u16, RawTerms)>>,
    top_degree: usize,
}

impl RingModelBuilder {
    pub fn new(coefficients: CoefficientRing, top_degree: usize) -> Self {
        RingModelBuilder {
            coefficients,
            generators: Vec::new(),
            rules: Vec::new(),
            top_degree,
        }
    }

    pub fn generator(mut self, name: &str, degree: usize) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
        });
        self.rules.push(None);
        self
    }

    /// Add the rewrite rule `g_index^power -> rhs`, rhs given as raw
    /// (exponents, coefficient) terms over the full generator list.
    pub fn rule(mut self, index: usize, power: u16, rhs: RawTerms) -> Self {
        self.rules[index] = Some((power, rhs));
        self
    }

    pub fn build(self) -> Result<Arc<RingModel>, RingError> {
        for g in &self.generators {
            if g.degree == 0 {
                return Err(RingError::ZeroDegreeGenerator(g.name.clone()));
            }
        }
        let mut rules = Vec::with_capacity(self.rules.len());
        for (i, slot) in self.rules.into_iter().enumerate() {
            match slot {
                None => rules.push(None),
                Some((power, raw)) => {
                    let gen = &self.generators[i];
                    if power < 2 {
                        return Err(RingError::BadRule {
                            generator: gen.name.clone(),
                            reason: "left-side exponent must be at least 2".into(),
                        });
                    }
                    let lhs_degree = gen.degree * power as usize;
                    let mut rhs = Vec::with_capacity(raw.len());
                    for (exps, coeff) in raw {
                        if exps.len() != self.generators.len() {
                            return Err(RingError::BadRule {
                                generator: gen.name.clone(),
                                reason: "right-side exponent vector has wrong arity".into(),
                            });
                        }
                        let deg: usize = exps
                            .iter()
                            .zip(&self.generators)
                            .map(|(&e, g)| e as usize * g.degree)
                            .sum();
                        if deg != lhs_degree {
                            return Err(RingError::BadRule {
                                generator: gen.name.clone(),
                                reason: format!(
                                    "right-side term has degree {deg}, left side has {lhs_degree}"
                                ),
                            });
                        }
                        if exps[i] >= power {
                            return Err(RingError::BadRule {
                                generator: gen.name.clone(),
                                reason: "right side does not lower the rewritten exponent".into(),
                            });
                        }
                        if exps[i + 1..].iter().any(|&e| e > 0) {
                            return Err(RingError::BadRule {
                                generator: gen.name.clone(),
                                reason: "right side mentions a later generator".into(),
                            });
                        }
                        if !coeff.is_zero() {
                            rhs.push((Monomial(exps), coeff));
                        }
                    }
                    rules.push(Some(Rule { power, rhs }));
                }
            }
        }
        Ok(Arc::new(RingModel {
            coefficients: self.coefficients,
            generators: self.generators,
            rules,
            top_degree: self.top_degree,
        }))
    }
}

impl RingModel {
    pub fn builder(coefficients: CoefficientRing, top_degree: usize) -> RingModelBuilder {
        RingModelBuilder::new(coefficients, top_degree)
    }

    pub fn coefficients(&self) -> CoefficientRing {
        self.coefficients
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as usize * g.degree)
            .sum()
    }

    /// Largest exponent of generator `i` appearing in any normal-form
    /// monomial: one less than the rule's left exponent, or bounded by the
    /// top degree when the generator has no rule.
    fn exponent_cap(&self, i: usize) -> u16 {
        let by_degree = (self.top_degree / self.generators[i].degree) as u16;
        match &self.rules[i] {
            Some(rule) => (rule.power - 1).min(by_degree),
            None => by_degree,
        }
    }

    /// All normal-form monomials of the given degree, in increasing
    /// exponent-vector order.
    pub fn basis(&self, degree: usize) -> Vec<Monomial> {
        if degree > self.top_degree {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.generators.len()];
        self.basis_rec(0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn basis_rec(&self, i: usize, remaining: usize, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let d = self.generators[i].degree;
        let cap = self.exponent_cap(i).min((remaining / d) as u16);
        for e in 0..=cap {
            exps[i] = e;
            self.basis_rec(i + 1, remaining - e as usize * d, exps, out);
            exps[i] = 0;
        }
    }

    /// Coefficient of `t^d` is the number of basis monomials in degree `d`.
    pub fn poincare_series(&self) -> PoincareSeries {
        let counts = (0..=self.top_degree)
            .map(|d| self.basis(d).len() as u64)
            .collect();
        PoincareSeries(counts)
    }

    fn normalize_coeff(&self, c: BigInt) -> BigInt {
        match self.coefficients {
            CoefficientRing::Integers => c,
            CoefficientRing::ModTwo => {
                if c.bit(0) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
        }
    }

    /// Koszul sign for merging exponent vectors `a * b` into `a + b`:
    /// each odd-degree generator from `b` moving left past a later-indexed
    /// odd-degree generator from `a` contributes one transposition.
    fn merge_sign(&self, a: &Monomial, b: &Monomial) -> i8 {
        if self.coefficients == CoefficientRing::ModTwo {
            return 1;
        }
        let mut swaps: u64 = 0;
        // odd contributions of b at index j cross odd contributions of a at i > j
        let mut odd_a_above: u64 = 0; // filled from the right
        for j in (0..self.generators.len()).rev() {
            if self.generators[j].degree % 2 == 1 {
                swaps += (b.0[j] as u64 % 2) * odd_a_above;
                odd_a_above += a.0[j] as u64 % 2;
            }
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Sign for splitting a stored monomial `m` as `(m / g_i^k) * g_i^k`,
    /// i.e. for moving `g_i^k` to the right past all later generators.
    fn split_sign(&self, m: &Monomial, i: usize, k: u16) -> i8 {
        if self.coefficients == CoefficientRing::ModTwo || self.generators[i].degree % 2 == 0 {
            return 1;
        }
        let moved = k as u64 % 2;
        if moved == 0 {
            return 1;
        }
        let crossed: u64 = (i + 1..self.generators.len())
            .filter(|&j| self.generators[j].degree % 2 == 1)
            .map(|j| m.0[j] as u64 % 2)
            .sum();
        if crossed % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Rewrite a raw term list into normal form.
    fn normalize(self: &Arc<Self>, raw: Vec<(Monomial, BigInt)>) -> BTreeMap<Monomial, BigInt> {
        let mut work = raw;
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while let Some((m, c)) = work.pop() {
            let c = self.normalize_coeff(c);
            if c.is_zero() {
                continue;
            }
            if self.monomial_degree(&m) > self.top_degree {
                continue;
            }
            // reduce the latest-added generator first: v's before u before base
            let reducible = (0..self.generators.len()).rev().find(|&i| {
                self.rules[i]
                    .as_ref()
                    .is_some_and(|rule| m.0[i] >= rule.power)
            });
            match reducible {
                None => {
                    // cancelled terms are removed so that is_zero stays a
                    // map-emptiness test
                    let entry = out.entry(m.clone()).or_insert_with(BigInt::zero);
                    *entry = self.normalize_coeff(entry.clone() + c);
                    if entry.is_zero() {
                        out.remove(&m);
                    }
                }
                Some(i) => {
                    let rule = self.rules[i].as_ref().expect("rule checked above");
                    let mut rest = m.clone();
                    rest.0[i] -= rule.power;
                    let sign = self.split_sign(&rest, i, rule.power);
                    for (rm, rc) in &rule.rhs {
                        let merge = self.merge_sign(&rest, rm);
                        let mut prod = rest.clone();
                        for (e, re) in prod.0.iter_mut().zip(&rm.0) {
                            *e += re;
                        }
                        let coeff = &c * rc * BigInt::from(sign as i64 * merge as i64);
                        work.push((prod, coeff));
                    }
                }
            }
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> GradedClass {
        GradedClass {
            ring: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> GradedClass {
        self.from_terms(vec![(Monomial::one(self.generators.len()), BigInt::one())])
    }

    pub fn generator_class(self: &Arc<Self>, index: usize) -> GradedClass {
        self.from_terms(vec![(
            Monomial::generator(self.generators.len(), index, 1),
            BigInt::one(),
        )])
    }

    pub fn class_by_name(self: &Arc<Self>, name: &str) -> Result<GradedClass, RingError> {
        let index = self
            .generator_index(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        Ok(self.generator_class(index))
    }

    /// Build a class from raw terms; the result is normalized.
    pub fn from_terms(self: &Arc<Self>, terms: Vec<(Monomial, BigInt)>) -> GradedClass {
        GradedClass {
            terms: self.normalize(terms),
            ring: Arc::clone(self),
        }
    }

    /// A new model with one generator appended: same coefficients, all
    /// existing rules kept (exponent vectors widened by a trailing zero),
    /// plus the rule `new^power -> rhs`. `rhs` raw terms are over the
    /// widened arity, and the truncation degree is replaced.
    pub fn extended(
        &self,
        name: &str,
        degree: usize,
        power: u16,
        rhs: RawTerms,
        new_top_degree: usize,
    ) -> Result<Arc<RingModel>, RingError> {
        let mut builder = RingModel::builder(self.coefficients, new_top_degree);
        for g in &self.generators {
            builder = builder.generator(&g.name, g.degree);
        }
        builder = builder.generator(name, degree);
        for (i, slot) in self.rules.iter().enumerate() {
            if let Some(rule) = slot {
                let raw = rule
                    .rhs
                    .iter()
                    .map(|(m, c)| {
                        let mut exps = m.0.clone();
                        exps.push(0);
                        (exps, c.clone())
                    })
                    .collect();
                builder = builder.rule(i, rule.power, raw);
            }
        }
        builder = builder.rule(self.generators.len(), power, rhs);
        builder.build()
    }

    /// Does `self`'s generator list (with degrees and coefficient ring)
    /// form a prefix of `other`'s?
    pub fn is_prefix_of(&self, other: &RingModel) -> bool {
        self.coefficients == other.coefficients
            && self.generators.len() <= other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a == b)
    }
}

/// Dimension-counting series of a ring model; index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries(pub Vec<u64>);

impl PoincareSeries {
    /// Coefficient of `t^d`, zero beyond the stored range.
    pub fn coefficient(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    /// Product of two series (polynomial convolution, no truncation).
    pub fn mul(&self, other: &PoincareSeries) -> PoincareSeries {
        if self.0.is_empty() || other.0.is_empty() {
            return PoincareSeries(Vec::new());
        }
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PoincareSeries(out)
    }

    /// `(1 + t^d)^n`
    pub fn binomial_power(d: usize, n: usize) -> PoincareSeries {
        let mut base = vec![0u64; d + 1];
        base[0] = 1;
        base[d] = 1;
        let base = PoincareSeries(base);
        let mut acc = PoincareSeries(vec![1]);
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        acc
    }

    fn trimmed(&self) -> &[u64] {
        let end = self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.trimmed();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, d) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, d) => write!(f, "t^{d}")?,
                (c, 1) => write!(f, "{c}t")?,
                (c, d) => write!(f, "{c}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// An element of a [`RingModel`], stored in normal form.
#[derive(Clone, Debug)]
pub struct GradedClass {
    ring: Arc<RingModel>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

impl GradedClass {
    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn same_ring(&self, other: &GradedClass) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Per-degree view: degree -> coefficient vector on that degree's basis.
    pub fn components(&self) -> BTreeMap<usize, Vec<BigInt>> {
        let mut degrees: Vec<usize> = self
            .terms
            .keys()
            .map(|m| self.ring.monomial_degree(m))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
            .into_iter()
            .map(|d| (d, self.coefficient_vector(d)))
            .collect()
    }

    /// Coefficients of this class on the basis of a single degree.
    pub fn coefficient_vector(&self, degree: usize) -> Vec<BigInt> {
        self.ring
            .basis(degree)
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(BigInt::zero))
            .collect()
    }

    /// Component of this class in one degree, as a class.
    pub fn component(&self, degree: usize) -> GradedClass {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.monomial_degree(m) == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedClass {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// The degree of a homogeneous class; `None` for 0 or mixed classes.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| self.ring.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn checked_add(&self, other: &GradedClass) -> Result<GradedClass, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::MixedRings);
        }
        let mut raw: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        raw.extend(other.terms.iter().map(|(m, c)| (m.clone(), c.clone())));
        Ok(self.ring.from_terms(raw))
    }

    pub fn checked_sub(&self, other: &GradedClass) -> Result<GradedClass, RingError> {
        self.checked_add(&other.neg())
    }

    /// Cup product. Errors on operands from different ring models.
    pub fn checked_mul(&self, other: &GradedClass) -> Result<GradedClass, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::MixedRings);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let sign = self.ring.merge_sign(ma, mb);
                let exps = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                raw.push((Monomial(exps), ca * cb * BigInt::from(sign as i64)));
            }
        }
        Ok(self.ring.from_terms(raw))
    }

    pub fn add(&self, other: &GradedClass) -> GradedClass {
        self.checked_add(other).expect("mixed-ring operands")
    }

    pub fn sub(&self, other: &GradedClass) -> GradedClass {
        self.checked_sub(other).expect("mixed-ring operands")
    }

    pub fn mul(&self, other: &GradedClass) -> GradedClass {
        self.checked_mul(other).expect("mixed-ring operands")
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, by: &BigInt) -> GradedClass {
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * by))
            .collect();
        self.ring.from_terms(raw)
    }

    pub fn scale_i64(&self, by: i64) -> GradedClass {
        self.scale(&BigInt::from(by))
    }

    pub fn pow(&self, k: usize) -> GradedClass {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Height: the largest `k >= 0` with `self^k != 0` (`self^0 = 1`),
    /// which is 0 for the zero class. Requires a homogeneous class of
    /// positive degree (nilpotence bounds the loop).
    pub fn height(&self) -> Result<usize, RingError> {
        if self.is_zero() {
            return Ok(0);
        }
        let degree = self.degree().ok_or(RingError::NotHomogeneous)?;
        if degree == 0 {
            return Err(RingError::NotHomogeneous);
        }
        let mut power = self.clone();
        let mut height = 1;
        loop {
            power = power.mul(self);
            if power.is_zero() {
                return Ok(height);
            }
            height += 1;
        }
    }

    /// Image of this class in a model that extends this one by appending
    /// generators, i.e. the pullback along the corresponding projection.
    pub fn lifted(&self, target: &Arc<RingModel>) -> Result<GradedClass, RingError> {
        if !self.ring.is_prefix_of(target) {
            return Err(RingError::MixedRings);
        }
        let arity = target.generators().len();
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.0.clone();
                exps.resize(arity, 0);
                (Monomial(exps), c.clone())
            })
            .collect();
        Ok(target.from_terms(raw))
    }

    /// Relative height over GF(2): the smallest `k >= 0` such that
    /// `self^(k+1)` lies in the principal ideal generated by `modulus`.
    /// Membership is decided degree-by-degree by row reduction.
    pub fn relative_height(&self, modulus: &GradedClass) -> Result<usize, RingError> {
        if !self.same_ring(modulus) {
            return Err(RingError::MixedRings);
        }
        if self.ring.coefficients() != CoefficientRing::ModTwo {
            return Err(RingError::RequiresModTwo);
        }
        if !modulus.is_homogeneous() {
            return Err(RingError::NotHomogeneous);
        }
        if !modulus.is_zero() && modulus.degree() == Some(0) {
            // unit ideal
            return Ok(0);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let degree = self.degree().ok_or(RingError::NotHomogeneous)?;
        if degree == 0 {
            return Err(RingError::NotHomogeneous);
        }
        let mut k = 0;
        let mut power = self.clone();
        loop {
            if power.is_zero() || power.in_principal_ideal(modulus) {
                return Ok(k);
            }
            power = power.mul(self);
            k += 1;
        }
    }

    /// GF(2) membership of a homogeneous class in the ideal `(modulus)`.
    fn in_principal_ideal(&self, modulus: &GradedClass) -> bool {
        if modulus.is_zero() {
            return self.is_zero();
        }
        let degree = self.degree().expect("caller ensures homogeneity");
        let mod_degree = modulus.degree().expect("caller ensures homogeneity");
        if degree < mod_degree {
            return self.is_zero();
        }
        let basis = self.ring.basis(degree);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_bits = |class: &GradedClass| -> BitVec {
            let mut v = BitVec::zeros(basis.len());
            for (m, c) in &class.terms {
                if !c.is_zero() {
                    v.set(index[m], true);
                }
            }
            v
        };
        let mut span = RowSpace::new();
        for cofactor in self.ring.basis(degree - mod_degree) {
            let gen = self
                .ring
                .from_terms(vec![(cofactor, BigInt::one())])
                .mul(modulus);
            if !gen.is_zero() {
                span.insert(to_bits(&gen));
            }
        }
        span.contains(&to_bits(self))
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c.is_negative();
            let abs = c.magnitude();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.generators()[i].name.clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.generators()[i].name, e));
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
