//! Symbolic vector bundles over the supported base spaces.
//!
//! The vocabulary is deliberately small: Whitney sums of canonical line
//! bundles (real over real projective space, complex over complex
//! projective space) and trivial line summands. That is enough to express
//! the bundle families whose sphere-bundle complexity this crate computes,
//! and every characteristic-class fact about them is syntactically
//! decidable.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::graded::{CoefficientRing, GradedClass, RingError, RingModel};

pub const SPEC_GRAMMAR: &str = "<base>; <k>*eta + <l>*eps  with base CP(n) | RP(n) | S(m) | pt";

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("bundle spec does not parse, expected `{SPEC_GRAMMAR}`: {0}")]
    Parse(String),
    #[error("canonical line bundles exist only over projective bases, not {0}")]
    CanonicalOverWrongBase(BaseSpace),
    #[error("bundle rank is {0}, need at least 2 for a sphere bundle")]
    RankTooSmall(usize),
    #[error("base parameter must be at least 1")]
    DegenerateBase,
    #[error("not in eta+eps form: the bundle has no trivial line summand")]
    NoTrivialSummand,
    #[error("non-orientable complement: an odd number of real canonical lines")]
    NonOrientableComplement,
    #[error("integral characteristic classes are not available over {0} (mod-2 only)")]
    IntegralUnsupportedBase(BaseSpace),
    #[error("{0} supports only mod-2 coefficients")]
    ModTwoOnlyBase(BaseSpace),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A supported base space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseSpace {
    Point,
    Sphere(u32),
    ComplexProjective(u32),
    RealProjective(u32),
}

impl BaseSpace {
    pub fn dim(&self) -> usize {
        match self {
            BaseSpace::Point => 0,
            BaseSpace::Sphere(m) => *m as usize,
            BaseSpace::ComplexProjective(n) => 2 * *n as usize,
            BaseSpace::RealProjective(n) => *n as usize,
        }
    }

    pub fn simply_connected(&self) -> bool {
        match self {
            BaseSpace::Point => true,
            BaseSpace::Sphere(m) => *m >= 2,
            BaseSpace::ComplexProjective(_) => true,
            // includes n = 1, the circle
            BaseSpace::RealProjective(_) => false,
        }
    }

    fn validate(&self) -> Result<(), BundleError> {
        match self {
            BaseSpace::Point => Ok(()),
            BaseSpace::Sphere(k) | BaseSpace::ComplexProjective(k) | BaseSpace::RealProjective(k) => {
                if *k == 0 {
                    Err(BundleError::DegenerateBase)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Standard truncated presentation of the cohomology ring.
    /// Real projective space carries 2-torsion integrally, which this
    /// engine does not model, so it is restricted to mod-2 coefficients.
    pub fn cohomology_ring(&self, coefficients: CoefficientRing) -> Result<Arc<RingModel>, BundleError> {
        self.validate()?;
        if matches!(self, BaseSpace::RealProjective(_)) && coefficients == CoefficientRing::Integers
        {
            return Err(BundleError::ModTwoOnlyBase(*self));
        }
        let model = match self {
            BaseSpace::Point => RingModel::builder(coefficients, 0).build()?,
            BaseSpace::Sphere(m) => RingModel::builder(coefficients, *m as usize)
                .generator("s", *m as usize)
                .rule(0, 2, vec![])
                .build()?,
            BaseSpace::ComplexProjective(n) => RingModel::builder(coefficients, 2 * *n as usize)
                .generator("x", 2)
                .rule(0, *n as u16 + 1, vec![])
                .build()?,
            BaseSpace::RealProjective(n) => RingModel::builder(coefficients, *n as usize)
                .generator("a", 1)
                .rule(0, *n as u16 + 1, vec![])
                .build()?,
        };
        Ok(model)
    }
}

impl fmt::Display for BaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpace::Point => write!(f, "pt"),
            BaseSpace::Sphere(m) => write!(f, "S({m})"),
            BaseSpace::ComplexProjective(n) => write!(f, "CP({n})"),
            BaseSpace::RealProjective(n) => write!(f, "RP({n})"),
        }
    }
}

/// Standard presentation of `H*(base)`.
pub fn make_base_ring(
    base: BaseSpace,
    coefficients: CoefficientRing,
) -> Result<Arc<RingModel>, BundleError> {
    base.cohomology_ring(coefficients)
}

/// One Whitney summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    TrivialLine,
    /// The tautological real line bundle; only over real projective space.
    RealCanonicalLine,
    /// The tautological complex line bundle viewed as a real plane bundle;
    /// only over complex projective space.
    ComplexCanonicalLine,
}

impl Summand {
    pub fn rank(&self) -> usize {
        match self {
            Summand::TrivialLine | Summand::RealCanonicalLine => 1,
            Summand::ComplexCanonicalLine => 2,
        }
    }
}

/// A Whitney sum of canonical and trivial line bundles over one base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    base: BaseSpace,
    summands: Vec<Summand>,
}

impl BundleSpec {
    pub fn new(base: BaseSpace, summands: Vec<Summand>) -> Result<Self, BundleError> {
        base.validate()?;
        for s in &summands {
            let ok = match s {
                Summand::TrivialLine => true,
                Summand::RealCanonicalLine => matches!(base, BaseSpace::RealProjective(_)),
                Summand::ComplexCanonicalLine => matches!(base, BaseSpace::ComplexProjective(_)),
            };
            if !ok {
                return Err(BundleError::CanonicalOverWrongBase(base));
            }
        }
        let spec = BundleSpec { base, summands };
        if spec.rank() < 2 {
            return Err(BundleError::RankTooSmall(spec.rank()));
        }
        Ok(spec)
    }

    /// `<count>*eta + <count>*eps` over the given base.
    pub fn from_counts(base: BaseSpace, eta: usize, eps: usize) -> Result<Self, BundleError> {
        let canonical = match base {
            BaseSpace::RealProjective(_) => Summand::RealCanonicalLine,
            BaseSpace::ComplexProjective(_) => Summand::ComplexCanonicalLine,
            _ if eta > 0 => return Err(BundleError::CanonicalOverWrongBase(base)),
            _ => Summand::TrivialLine, // unused
        };
        let mut summands = vec![canonical; eta];
        summands.extend(std::iter::repeat_n(Summand::TrivialLine, eps));
        BundleSpec::new(base, summands)
    }

    pub fn base(&self) -> BaseSpace {
        self.base
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Real rank `q` of the Whitney sum.
    pub fn rank(&self) -> usize {
        self.summands.iter().map(Summand::rank).sum()
    }

    pub fn trivial_count(&self) -> usize {
        self.summands
            .iter()
            .filter(|s| **s == Summand::TrivialLine)
            .count()
    }

    pub fn canonical_count(&self) -> usize {
        self.summands.len() - self.trivial_count()
    }

    /// First Stiefel-Whitney class vanishes iff the number of real
    /// canonical lines is even (complex and trivial lines contribute none).
    pub fn orientable(&self) -> bool {
        let real_lines = self
            .summands
            .iter()
            .filter(|s| **s == Summand::RealCanonicalLine)
            .count();
        real_lines % 2 == 0
    }

    pub fn has_section(&self) -> bool {
        self.trivial_count() >= 1
    }

    pub fn has_two_sections(&self) -> bool {
        self.trivial_count() >= 2
    }

    /// Syntactic test: the summand multiset is a sum of complex line
    /// bundles plus an even number of trivial lines. Real canonical lines
    /// are never counted, so this is a sound under-approximation.
    pub fn complex_structure(&self) -> bool {
        let has_real = self.summands.contains(&Summand::RealCanonicalLine);
        !has_real && self.trivial_count() % 2 == 0
    }

    pub fn facts(&self) -> BundleFacts {
        BundleFacts {
            orientable: self.orientable(),
            has_section: self.has_section(),
            has_two_sections: self.has_two_sections(),
            complex_structure: self.complex_structure(),
            euler_class_eta: self.euler_class_eta().ok(),
            sw_total: self.sw_total(),
            euler_height_stiefel: self.euler_height_stiefel().ok(),
        }
    }

    /// Total Stiefel-Whitney class in the mod-2 cohomology of the base,
    /// by the Cartan formula over the summands.
    pub fn sw_total(&self) -> GradedClass {
        let ring = self
            .base
            .cohomology_ring(CoefficientRing::ModTwo)
            .expect("mod-2 base ring always exists");
        let mut total = ring.one();
        for s in &self.summands {
            let factor = match s {
                Summand::TrivialLine => ring.one(),
                Summand::RealCanonicalLine => {
                    ring.one().add(&ring.class_by_name("a").expect("RP generator"))
                }
                Summand::ComplexCanonicalLine => {
                    ring.one().add(&ring.class_by_name("x").expect("CP generator"))
                }
            };
            total = total.mul(&factor);
        }
        total
    }

    /// Stiefel-Whitney class of the bundle in one degree.
    pub fn sw_class(&self, degree: usize) -> GradedClass {
        self.sw_total().component(degree)
    }

    /// Euler class of the complement `eta` in the decomposition
    /// `xi = eta + eps`, as a class in the integral base ring. The
    /// complement of one designated trivial line is everything else; its
    /// Euler class is a product of complex-line Euler classes, or zero as
    /// soon as the complement still contains a trivial line.
    pub fn euler_class_eta(&self) -> Result<GradedClass, BundleError> {
        if !self.has_section() {
            return Err(BundleError::NoTrivialSummand);
        }
        if matches!(self.base, BaseSpace::RealProjective(_)) {
            // complement = all canonical lines (+ remaining trivials)
            if self.canonical_count() % 2 == 1 {
                return Err(BundleError::NonOrientableComplement);
            }
            return Err(BundleError::IntegralUnsupportedBase(self.base));
        }
        let ring = self.base.cohomology_ring(CoefficientRing::Integers)?;
        if self.trivial_count() >= 2 {
            // the complement keeps a trivial summand, so it has a section
            return Ok(ring.zero());
        }
        let complex_lines = self
            .summands
            .iter()
            .filter(|s| **s == Summand::ComplexCanonicalLine)
            .count();
        // over the point or a sphere the complement would be trivial-only,
        // which the branch above already caught, so here the base is CP(n)
        let x = ring.class_by_name("x").expect("CP generator");
        Ok(x.pow(complex_lines))
    }

    /// Height of the Euler class of the orthogonal-frame bundle over the
    /// sphere bundle's total space, from the height of `e(eta)` by the
    /// rank-parity rule: equal for even rank, rounded up to odd for odd
    /// rank.
    pub fn euler_height_stiefel(&self) -> Result<usize, BundleError> {
        let e = self.euler_class_eta()?;
        let h_eta = e.height()?;
        if self.rank() % 2 == 0 {
            Ok(h_eta)
        } else {
            Ok(2 * (h_eta / 2) + 1)
        }
    }
}

/// Characteristic-class and structure facts derived from a [`BundleSpec`].
#[derive(Clone, Debug)]
pub struct BundleFacts {
    pub orientable: bool,
    pub has_section: bool,
    pub has_two_sections: bool,
    pub complex_structure: bool,
    pub euler_class_eta: Option<GradedClass>,
    pub sw_total: GradedClass,
    pub euler_height_stiefel: Option<usize>,
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eta = self.canonical_count();
        let eps = self.trivial_count();
        let mut parts = Vec::new();
        if eta > 0 {
            parts.push(format!("{eta}*eta"));
        }
        if eps > 0 {
            parts.push(format!("{eps}*eps"));
        }
        write!(f, "{}; {}", self.base, parts.join("+"))
    }
}

impl FromStr for BundleSpec {
    type Err = BundleError;

    /// Parse `CP(3); 1*eta+1*eps` and friends.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base_str, bundle_str) = s
            .split_once(';')
            .ok_or_else(|| BundleError::Parse(format!("missing `;` in `{s}`")))?;
        let base = parse_base(base_str.trim())?;
        let mut eta = 0usize;
        let mut eps = 0usize;
        for term in bundle_str.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(BundleError::Parse("empty summand term".into()));
            }
            let (count, name) = match term.split_once('*') {
                Some((k, name)) => {
                    let k = k.trim().parse::<usize>().map_err(|_| {
                        BundleError::Parse(format!("bad summand multiplicity in `{term}`"))
                    })?;
                    (k, name.trim())
                }
                None => (1, term),
            };
            match name {
                "eta" => eta += count,
                "eps" => eps += count,
                other => {
                    return Err(BundleError::Parse(format!(
                        "unknown summand `{other}` (expected eta or eps)"
                    )))
                }
            }
        }
        BundleSpec::from_counts(base, eta, eps)
    }
}

fn parse_base(s: &str) -> Result<BaseSpace, BundleError> {
    if s == "pt" {
        return Ok(BaseSpace::Point);
    }
    let (kind, rest) = s
        .split_once('(')
        .ok_or_else(|| BundleError::Parse(format!("bad base `{s}`")))?;
    let digits = rest
        .strip_suffix(')')
        .ok_or_else(|| BundleError::Parse(format!("unclosed parenthesis in base `{s}`")))?;
    let value = digits
        .trim()
        .parse::<u32>()
        .map_err(|_| BundleError::Parse(format!("bad base parameter `{digits}`")))?;
    let base = match kind.trim() {
        "CP" => BaseSpace::ComplexProjective(value),
        "RP" => BaseSpace::RealProjective(value),
        "S" => BaseSpace::Sphere(value),
        other => return Err(BundleError::Parse(format!("unknown base kind `{other}`"))),
    };
    base.validate()?;
    Ok(base)
}

/// Convenience used all over the test suites.
pub fn spec(text: &str) -> BundleSpec {
    text.parse().expect("literal bundle spec")
}
