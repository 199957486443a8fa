//! Deterministic verification harness.
//!
//! Each checker samples structured families of flat connections on the
//! shipped fixture set, evaluates both sides of one mathematical identity
//! at every point with exact arithmetic, and reports counterexamples (with
//! full reproduction data) instead of asserting. A reported counterexample
//! is a mathematical fact about the implementation, not sampling noise.
//!
//! Identical `(fixtures, plan)` inputs produce byte-identical reports
//! except for the wall-time field.

mod checks;
mod sample;

pub use checks::*;
pub use sample::{sample_flat, sample_flat_product, sample_flat_wedge, Sample};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cdga::Cdga;
use crate::constructions::{tensor_product, wedge_sum, ProductWitness, WedgeWitness};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::lie::{self, CatalogEntry};

/// Fixed default seed so runs are reproducible without flags.
pub const DEFAULT_SEED: u64 = 42;

/// Deterministic sampling plan: seed, rational height bound, counts per
/// point family and grid bounds for one-parameter families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub seed: u64,
    /// Max absolute numerator and denominator of sampled rationals.
    pub height: u32,
    pub rank_one: usize,
    pub left_only: usize,
    pub right_only: usize,
    pub generic: usize,
    pub grid_lo: i64,
    pub grid_hi: i64,
    /// Random points added on top of the grid in one-parameter families.
    pub random_line: usize,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: DEFAULT_SEED,
            height: 6,
            rank_one: 70,
            left_only: 40,
            right_only: 40,
            generic: 50,
            grid_lo: -5,
            grid_hi: 5,
            random_line: 50,
        }
    }
}

impl SamplePlan {
    pub fn with_seed(seed: u64) -> Self {
        SamplePlan {
            seed,
            ..SamplePlan::default()
        }
    }

    /// Sets every per-family count to `n`.
    pub fn with_count(mut self, n: usize) -> Self {
        self.rank_one = n;
        self.left_only = n;
        self.right_only = n;
        self.generic = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.height < 1 {
            return Err(Error::Invalid("plan height must be at least 1".into()));
        }
        if self.rank_one == 0
            || self.left_only == 0
            || self.right_only == 0
            || self.generic == 0
            || self.random_line == 0
        {
            return Err(Error::Invalid("plan counts must be positive".into()));
        }
        Ok(())
    }

    /// Total points the product/wedge samplers aim for.
    pub fn total(&self) -> usize {
        self.rank_one + self.left_only + self.right_only + self.generic
    }
}

/// One point family inside a theorem report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub name: String,
    pub count: usize,
    pub failures: Vec<Counterexample>,
}

/// Full reproduction data for a failed point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Connection coefficients (or other point data) as exact rationals.
    pub point: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<bool>,
    pub note: String,
}

/// Outcome of one checker run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub fixture: Vec<String>,
    pub families: Vec<FamilyReport>,
    pub pass: bool,
    pub wall_ms: u64,
}

impl TheoremReport {
    pub fn failures(&self) -> usize {
        self.families.iter().map(|f| f.failures.len()).sum()
    }

    pub fn points(&self) -> usize {
        self.families.iter().map(|f| f.count).sum()
    }
}

impl std::fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "[{}] {} ({} points, {} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.theorem,
            self.points(),
            self.wall_ms
        )?;
        writeln!(f, "  fixtures: {}", self.fixture.join(", "))?;
        for fam in &self.families {
            if fam.failures.is_empty() {
                writeln!(f, "  family {}: {} points ok", fam.name, fam.count)?;
            } else {
                writeln!(
                    f,
                    "  family {}: {} points, {} FAILURES",
                    fam.name,
                    fam.count,
                    fam.failures.len()
                )?;
                for c in &fam.failures {
                    writeln!(f, "    {}: point {:?}", c.note, c.point)?;
                    if let (Some(l), Some(r)) = (c.lhs, c.rhs) {
                        writeln!(f, "      lhs={l} rhs={r}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lie targets used by the harness. Kept as a value so tests can inject
/// deliberately corrupted entries and watch the named checker fail.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub ab1: CatalogEntry,
    pub ab2: CatalogEntry,
    pub sl2: CatalogEntry,
    pub sol2: CatalogEntry,
    pub gl2: CatalogEntry,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog {
            ab1: lie::abelian(1),
            ab2: lie::abelian(2),
            sl2: lie::sl2(),
            sol2: lie::sol2(),
            gl2: lie::gl2(),
        }
    }
}

impl Catalog {
    /// Replaces the solvable catalog entry with wrong structure constants
    /// (`[a,b] = a`). Fault injection for harness self-tests.
    pub fn corrupt_sol2(&mut self) {
        use crate::linalg::{rint, Mat, Rat};
        let dim = 2;
        let mut bracket = vec![vec![vec![Rat::from_integer(0.into()); dim]; dim]; dim];
        bracket[0][1][0] = rint(1);
        bracket[1][0][0] = rint(-1);
        let lie = Arc::new(
            crate::lie::LieAlgebra::new(dim, bracket, vec!["a".into(), "b".into()], "sol2")
                .expect("valid"),
        );
        let a = Mat::from_i64(&[&[-1, 0], &[0, 0]]);
        let b = Mat::from_i64(&[&[0, 1], &[0, 0]]);
        let rep = crate::lie::Representation::new(lie.clone(), vec![b, a]).expect("valid");
        self.sol2 = CatalogEntry { lie, rep };
    }

    pub fn targets(&self) -> Vec<(&'static str, &CatalogEntry)> {
        vec![
            ("abelian(1)", &self.ab1),
            ("abelian(2)", &self.ab2),
            ("sl2", &self.sl2),
            ("sol2", &self.sol2),
            ("gl2", &self.gl2),
        ]
    }
}

/// The fixture set shipped with the harness: small exterior algebras, the
/// solvable two-generator model, and their pairwise products and wedges.
pub struct FixtureSet {
    pub base: Vec<(String, Arc<Cdga>)>,
    pub products: Vec<(String, ProductWitness)>,
    pub wedges: Vec<(String, WedgeWitness)>,
}

pub fn build_fixtures() -> FixtureSet {
    let ext1 = Arc::new(fixtures::exterior_q(&["e"], 2));
    let ext1b = Arc::new(fixtures::exterior_q(&["f"], 2));
    let ext2 = Arc::new(fixtures::exterior(&["e1", "e2"], 2));
    let ext2b = Arc::new(fixtures::exterior(&["f1", "f2"], 2));
    let ext3 = Arc::new(fixtures::exterior(&["e1", "e2", "e3"], 3));
    let solvable = Arc::new(fixtures::solvable_model());

    let base = vec![
        ("ext1".to_string(), ext1.clone()),
        ("ext2".to_string(), ext2.clone()),
        ("ext3".to_string(), ext3.clone()),
        ("solvable".to_string(), solvable.clone()),
    ];
    let products = vec![
        (
            "ext1_x_ext1b".to_string(),
            tensor_product(&ext1, &ext1b).expect("valid product"),
        ),
        (
            "ext2_x_ext1b".to_string(),
            tensor_product(&ext2, &ext1b).expect("valid product"),
        ),
        (
            "ext2_x_ext2b".to_string(),
            tensor_product(&ext2, &ext2b).expect("valid product"),
        ),
        (
            "solvable_x_ext1b".to_string(),
            tensor_product(&solvable, &ext1b).expect("valid product"),
        ),
    ];
    let wedges = vec![
        (
            "ext1_v_ext1b".to_string(),
            wedge_sum(&ext1, &ext1b).expect("valid wedge"),
        ),
        (
            "ext2_v_ext2b".to_string(),
            wedge_sum(&ext2, &ext2b).expect("valid wedge"),
        ),
        (
            "ext2_v_ext1b".to_string(),
            wedge_sum(&ext2, &ext1b).expect("valid wedge"),
        ),
        (
            "solvable_v_ext2b".to_string(),
            wedge_sum(&solvable, &ext2b).expect("valid wedge"),
        ),
    ];
    FixtureSet {
        base,
        products,
        wedges,
    }
}

/// Checker identifiers, in execution order.
pub const SUITE_IDS: &[&str] = &[
    "golden_holonomy_sol2",
    "golden_resonance_line",
    "golden_r0_gl2",
    "zero_point_betti",
    "r0_kernel_consistency",
    "flat_hom_correspondence",
    "lie_vs_aomoto_betti",
    "rank_one_criterion",
    "product_upper_bound",
    "product_strictness",
    "product_equality",
    "trichotomy",
    "presentation_product",
    "presentation_wedge",
    "wedge_higher",
    "wedge_degree1",
    "structural",
];

/// Runs one checker by id.
pub fn run_one(
    id: &str,
    fixtures: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> Result<TheoremReport> {
    plan.validate()?;
    let report = match id {
        "golden_holonomy_sol2" => checks::check_golden_holonomy(catalog),
        "golden_resonance_line" => checks::check_golden_resonance_line(catalog, plan),
        "golden_r0_gl2" => checks::check_golden_r0(catalog, plan),
        "zero_point_betti" => checks::check_zero_point_betti(fixtures, catalog),
        "r0_kernel_consistency" => checks::check_r0_kernel_consistency(fixtures, catalog, plan),
        "flat_hom_correspondence" => {
            checks::check_flat_hom_correspondence(fixtures, catalog, plan)
        }
        "lie_vs_aomoto_betti" => checks::check_lie_vs_aomoto(fixtures, catalog, plan),
        "rank_one_criterion" => checks::check_rank_one_criterion(fixtures, catalog, plan),
        "product_upper_bound" => checks::check_product_upper_bound(fixtures, catalog, plan),
        "product_strictness" => checks::check_product_strictness(catalog, plan),
        "product_equality" => checks::check_product_equality(fixtures, catalog, plan),
        "trichotomy" => checks::check_trichotomy(fixtures, catalog, plan),
        "presentation_product" => checks::check_presentation_product(fixtures),
        "presentation_wedge" => checks::check_presentation_wedge(fixtures),
        "wedge_higher" => checks::check_wedge_higher(fixtures, catalog, plan),
        "wedge_degree1" => checks::check_wedge_degree1(fixtures, catalog, plan)?,
        "structural" => checks::check_structural(fixtures, catalog, plan),
        other => return Err(Error::Invalid(format!("unknown suite id `{other}`"))),
    };
    Ok(report)
}

/// Runs the named checkers (or all of them) on the shipped fixtures.
pub fn run_suite(ids: &[String], catalog: &Catalog, plan: &SamplePlan) -> Result<Vec<TheoremReport>> {
    let fixtures = build_fixtures();
    let selected: Vec<&str> = if ids.is_empty() || (ids.len() == 1 && ids[0] == "all") {
        SUITE_IDS.to_vec()
    } else {
        let mut v = Vec::new();
        for id in ids {
            if !SUITE_IDS.contains(&id.as_str()) {
                return Err(Error::Invalid(format!("unknown suite id `{id}`")));
            }
            v.push(id.as_str());
        }
        v
    };
    selected
        .iter()
        .map(|id| run_one(id, &fixtures, catalog, plan))
        .collect()
}

/// Runs every checker with the default catalog.
pub fn run_all(plan: &SamplePlan) -> Result<Vec<TheoremReport>> {
    run_suite(&[], &Catalog::default(), plan)
}
