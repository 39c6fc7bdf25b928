//! Bound rules for the sequential parametrized topological complexity of
//! the unit sphere bundle of a [`BundleSpec`], and their aggregation into
//! an interval or exact value.
//!
//! Every rule records whether its hypotheses hold for the given bundle,
//! which hypothesis failed when they do not, and a one-line citation of
//! the mathematical mechanism behind it, so a report is self-explanatory.

use serde::Serialize;

use crate::bundles::BundleSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleId {
    LGeneric,
    LFiberParity,
    LEulerHeight,
    LSwHeight,
    UDimension,
    UComplex,
    UTwoSections,
    USecatStiefel,
    USharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
    Exact,
}

/// One evaluated bound rule.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRule {
    pub id: RuleId,
    pub direction: Direction,
    pub value: Option<usize>,
    pub applicable: bool,
    pub conditions: Vec<String>,
    pub citation: &'static str,
}

impl BoundRule {
    fn applies(
        id: RuleId,
        direction: Direction,
        value: usize,
        conditions: Vec<String>,
        citation: &'static str,
    ) -> Self {
        BoundRule {
            id,
            direction,
            value: Some(value),
            applicable: true,
            conditions,
            citation,
        }
    }

    fn skipped(
        id: RuleId,
        direction: Direction,
        conditions: Vec<String>,
        citation: &'static str,
    ) -> Self {
        BoundRule {
            id,
            direction,
            value: None,
            applicable: false,
            conditions,
            citation,
        }
    }
}

/// Aggregated report: all rules plus the combined interval.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub spec: String,
    pub r: usize,
    pub rules: Vec<BoundRule>,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

impl BoundReport {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Value of one rule, if it applied.
    pub fn rule_value(&self, id: RuleId) -> Option<usize> {
        self.rules
            .iter()
            .find(|rule| rule.id == id)
            .and_then(|rule| rule.value)
    }
}

const CITE_GENERIC: &str =
    "restriction to a fibre: the sequential complexity of a sphere is at least r-1";
const CITE_PARITY: &str =
    "restriction to a fibre: even-dimensional spheres have sequential complexity r";
const CITE_EULER: &str =
    "cup-length of the diagonal kernel equals the frame-bundle Euler class height plus r-1";
const CITE_SW: &str =
    "mod-2 cup-length of the diagonal kernel via the relative Stiefel-Whitney height";
const CITE_DIMENSION: &str =
    "dimension/connectivity bound on the sectional category of the evaluation fibration";
const CITE_COMPLEX: &str =
    "multiplication by i sections the orthonormal-frame bundle, so one partition piece per antipodal pattern suffices";
const CITE_TWO_SECTIONS: &str =
    "two independent sections cover the orthonormal-frame bundle in two pieces";
const CITE_SECAT: &str =
    "low-dimensional base: the frame bundle's sectional category equals its Euler class height";
const CITE_SHARP: &str = "sharp upper bound via vanishing of the power of the first obstruction";

/// `TC_r >= r - 1`, unconditionally.
pub fn rule_lower_generic(_spec: &BundleSpec, r: usize) -> BoundRule {
    BoundRule::applies(
        RuleId::LGeneric,
        Direction::Lower,
        r - 1,
        vec!["always applicable".into()],
        CITE_GENERIC,
    )
}

/// `TC_r >= r` when the rank is odd (the fibre is an even sphere).
pub fn rule_lower_parity(spec: &BundleSpec, r: usize) -> BoundRule {
    let q = spec.rank();
    if q % 2 == 1 {
        BoundRule::applies(
            RuleId::LFiberParity,
            Direction::Lower,
            r,
            vec![format!("rank q = {q} is odd")],
            CITE_PARITY,
        )
    } else {
        BoundRule::skipped(
            RuleId::LFiberParity,
            Direction::Lower,
            vec![format!("rank q = {q} is even")],
            CITE_PARITY,
        )
    }
}

/// `TC_r >= h(e) + r - 1` where `h(e)` is the frame-bundle Euler height.
pub fn rule_lower_euler_height(spec: &BundleSpec, r: usize) -> BoundRule {
    match spec.euler_height_stiefel() {
        Ok(h) => BoundRule::applies(
            RuleId::LEulerHeight,
            Direction::Lower,
            h + r - 1,
            vec![
                "eta+eps decomposition with orientable complement over a torsion-free base".into(),
                format!("frame-bundle Euler height h = {h}"),
            ],
            CITE_EULER,
        ),
        Err(why) => BoundRule::skipped(
            RuleId::LEulerHeight,
            Direction::Lower,
            vec![why.to_string()],
            CITE_EULER,
        ),
    }
}

/// `TC_r >= h(w_{q-1} | w_q) + r - 1`; mod-2 classes always exist.
pub fn rule_lower_sw_height(spec: &BundleSpec, r: usize) -> BoundRule {
    let q = spec.rank();
    let w_top_minus_one = spec.sw_class(q - 1);
    let w_top = spec.sw_class(q);
    let h = w_top_minus_one
        .relative_height(&w_top)
        .expect("mod-2 classes in one base ring");
    BoundRule::applies(
        RuleId::LSwHeight,
        Direction::Lower,
        h + r - 1,
        vec![format!("relative height h(w_{}|w_{}) = {h}", q - 1, q)],
        CITE_SW,
    )
}

/// `TC_r <= r - 1 + ceil((dim B + 1)/(q-1))`. The fibre `S^{q-1}` is
/// `(q-2)`-connected, which is all the connectivity the bound needs, so
/// this applies to every supported rank `q >= 2`.
pub fn rule_upper_dimension(spec: &BundleSpec, r: usize) -> BoundRule {
    let q = spec.rank();
    let dim_b = spec.base().dim();
    let value = r - 1 + (dim_b + 1).div_ceil(q - 1);
    BoundRule::applies(
        RuleId::UDimension,
        Direction::Upper,
        value,
        vec![format!(
            "fibre S^{} is {}-connected, dim B = {dim_b}",
            q - 1,
            q as isize - 2
        )],
        CITE_DIMENSION,
    )
}

/// `TC_r = r - 1` for bundles carrying a complex structure.
pub fn rule_upper_complex(spec: &BundleSpec, r: usize) -> BoundRule {
    if spec.complex_structure() {
        BoundRule::applies(
            RuleId::UComplex,
            Direction::Exact,
            r - 1,
            vec!["summands form a complex bundle".into()],
            CITE_COMPLEX,
        )
    } else {
        BoundRule::skipped(
            RuleId::UComplex,
            Direction::Exact,
            vec!["summands do not form a complex bundle".into()],
            CITE_COMPLEX,
        )
    }
}

/// `TC_r <= r` with two independent sections; exact when the rank is odd.
pub fn rule_upper_two_sections(spec: &BundleSpec, r: usize) -> BoundRule {
    if !spec.has_two_sections() {
        return BoundRule::skipped(
            RuleId::UTwoSections,
            Direction::Upper,
            vec![format!(
                "{} trivial summand(s), need two",
                spec.trivial_count()
            )],
            CITE_TWO_SECTIONS,
        );
    }
    let q = spec.rank();
    if q % 2 == 1 {
        BoundRule::applies(
            RuleId::UTwoSections,
            Direction::Exact,
            r,
            vec![
                "two trivial summands".into(),
                format!("rank q = {q} odd, so the fibre bound r is also attained"),
            ],
            CITE_TWO_SECTIONS,
        )
    } else {
        BoundRule::applies(
            RuleId::UTwoSections,
            Direction::Upper,
            r,
            vec!["two trivial summands".into()],
            CITE_TWO_SECTIONS,
        )
    }
}

/// Exact value `h + r - 1` when `dim B <= (q-1) h`.
pub fn rule_upper_secat(spec: &BundleSpec, r: usize) -> BoundRule {
    let h = match spec.euler_height_stiefel() {
        Ok(h) => h,
        Err(why) => {
            return BoundRule::skipped(
                RuleId::USecatStiefel,
                Direction::Exact,
                vec![why.to_string()],
                CITE_SECAT,
            )
        }
    };
    let q = spec.rank();
    let dim_b = spec.base().dim();
    if dim_b <= (q - 1) * h {
        BoundRule::applies(
            RuleId::USecatStiefel,
            Direction::Exact,
            h + r - 1,
            vec![format!("dim B = {dim_b} <= (q-1) h = {}", (q - 1) * h)],
            CITE_SECAT,
        )
    } else {
        BoundRule::skipped(
            RuleId::USecatStiefel,
            Direction::Exact,
            vec![format!("dim B = {dim_b} > (q-1) h = {}", (q - 1) * h)],
            CITE_SECAT,
        )
    }
}

/// `TC_r <= r - 1 + dim B/(q-1)` under divisibility and a height quota.
pub fn rule_upper_sharp(spec: &BundleSpec, r: usize) -> BoundRule {
    let q = spec.rank();
    let dim_b = spec.base().dim();
    let mut failures = Vec::new();
    if q < 3 {
        failures.push(format!("rank q = {q} < 3"));
    }
    if !spec.base().simply_connected() {
        failures.push(format!("base {} is not simply connected", spec.base()));
    }
    if q >= 3 && dim_b % (q - 1) != 0 {
        failures.push(format!("q - 1 = {} does not divide dim B = {dim_b}", q - 1));
    }
    let h = match spec.euler_height_stiefel() {
        Ok(h) => Some(h),
        Err(why) => {
            failures.push(why.to_string());
            None
        }
    };
    if let Some(h) = h {
        if q >= 3 && dim_b % (q - 1) == 0 && h > dim_b / (q - 1) {
            failures.push(format!("h = {h} exceeds dim B/(q-1) = {}", dim_b / (q - 1)));
        }
    }
    if !failures.is_empty() {
        return BoundRule::skipped(RuleId::USharp, Direction::Upper, failures, CITE_SHARP);
    }
    let m = dim_b / (q - 1);
    BoundRule::applies(
        RuleId::USharp,
        Direction::Upper,
        r - 1 + m,
        vec![format!(
            "q = {q} >= 3, simply connected base, dim B/(q-1) = {m} >= h = {}",
            h.expect("checked above")
        )],
        CITE_SHARP,
    )
}

/// Evaluate every rule and combine: `lower` is the maximum over applicable
/// lower and exact rules, `upper` the minimum over applicable upper and
/// exact rules, and `exact` is set when they agree.
pub fn evaluate(spec: &BundleSpec, r: usize) -> BoundReport {
    assert!(r >= 2, "sequential complexity needs r >= 2");
    let rules = vec![
        rule_lower_generic(spec, r),
        rule_lower_parity(spec, r),
        rule_lower_euler_height(spec, r),
        rule_lower_sw_height(spec, r),
        rule_upper_dimension(spec, r),
        rule_upper_complex(spec, r),
        rule_upper_two_sections(spec, r),
        rule_upper_secat(spec, r),
        rule_upper_sharp(spec, r),
    ];
    let lower = rules
        .iter()
        .filter(|rule| rule.applicable && rule.direction != Direction::Upper)
        .filter_map(|rule| rule.value)
        .max()
        .unwrap_or(0);
    let upper = rules
        .iter()
        .filter(|rule| rule.applicable && rule.direction != Direction::Lower)
        .filter_map(|rule| rule.value)
        .min()
        .expect("the dimension bound always applies");
    BoundReport {
        spec: spec.to_string(),
        r,
        rules,
        lower,
        upper,
        exact: (lower == upper).then_some(lower),
    }
}
