//! Per-identity checkers. Each one evaluates both sides of a single
//! mathematical statement at every sampled point and reports rather than
//! asserts.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cdga::Cdga;
use crate::connection::{holonomy_presentation, Connection, LieMapCandidate};
use crate::constructions::{
    predicted_product_presentation, predicted_wedge_presentation, trichotomy_classify,
    WedgeWitness,
};
use crate::error::{Error, Result};
use crate::io::mat_to_rows;
use crate::lie::{CatalogEntry, Representation};
use crate::linalg::{rint, Mat, Rat};
use crate::resonance::{
    aomoto_deltas, in_resonance, lie_low_cohomology_dim, module_structure_chain_check,
    r0_membership_by_kernels, rank_one_resonance_criterion, twisted_betti, ResonanceQuery,
};
use crate::{fixtures, verify::sample};

use super::sample::{rand_rat, salt, sample_flat, sample_flat_product, sample_flat_wedge};
use super::{Catalog, Counterexample, FamilyReport, FixtureSet, SamplePlan, TheoremReport};

struct Check {
    theorem: &'static str,
    fixture: Vec<String>,
    families: Vec<FamilyReport>,
    start: Instant,
}

impl Check {
    fn new(theorem: &'static str) -> Check {
        Check {
            theorem,
            fixture: Vec::new(),
            families: Vec::new(),
            start: Instant::now(),
        }
    }

    fn fixture(&mut self, name: &str) {
        if !self.fixture.iter().any(|f| f == name) {
            self.fixture.push(name.to_string());
        }
    }

    fn family_mut(&mut self, name: &str) -> &mut FamilyReport {
        if let Some(pos) = self.families.iter().position(|f| f.name == name) {
            return &mut self.families[pos];
        }
        self.families.push(FamilyReport {
            name: name.to_string(),
            count: 0,
            failures: Vec::new(),
        });
        self.families.last_mut().expect("just pushed")
    }

    fn check(&mut self, family: &str, ok: bool, make: impl FnOnce() -> Counterexample) {
        let fam = self.family_mut(family);
        fam.count += 1;
        if !ok {
            fam.failures.push(make());
        }
    }

    fn finish(self) -> TheoremReport {
        let pass = self.families.iter().all(|f| f.failures.is_empty());
        TheoremReport {
            theorem: self.theorem.to_string(),
            fixture: self.fixture,
            families: self.families,
            pass,
            wall_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

fn ce(point: Vec<Vec<String>>, note: impl Into<String>) -> Counterexample {
    Counterexample {
        point,
        degree: None,
        depth: None,
        lhs: None,
        rhs: None,
        note: note.into(),
    }
}

fn ce_sides(
    point: Vec<Vec<String>>,
    degree: usize,
    lhs: bool,
    rhs: bool,
    note: impl Into<String>,
) -> Counterexample {
    Counterexample {
        point,
        degree: Some(degree),
        depth: Some(1),
        lhs: Some(lhs),
        rhs: Some(rhs),
        note: note.into(),
    }
}

fn point_of(conn: &Connection) -> Vec<Vec<String>> {
    mat_to_rows(conn.coeffs())
}

fn member(a: &Arc<Cdga>, rep: &Representation, conn: &Connection, degree: usize) -> bool {
    in_resonance(
        a,
        rep,
        conn,
        ResonanceQuery { degree, depth: 1 },
    )
    .expect("membership at a sampled flat point")
}

/// All fixtures as plain algebras, for checkers that do not need witnesses.
fn all_algebras(fixtures: &FixtureSet) -> Vec<(String, Arc<Cdga>)> {
    let mut v: Vec<(String, Arc<Cdga>)> = fixtures.base.clone();
    for (name, w) in &fixtures.products {
        v.push((name.clone(), w.product.clone()));
    }
    for (name, w) in &fixtures.wedges {
        v.push((name.clone(), w.wedge.clone()));
    }
    v
}

/// Samples flat points on any fixture, using the witness-aware sampler
/// where one exists so one-sided families are represented.
fn flats_for(
    fixtures: &FixtureSet,
    name: &str,
    a: &Arc<Cdga>,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    tag: &str,
) -> Vec<sample::Sample> {
    let s = salt(&format!("{tag}/{name}/{}", entry.lie.name()));
    if let Some((_, w)) = fixtures.products.iter().find(|(n, _)| n == name) {
        sample_flat_product(w, entry, plan, s)
    } else if let Some((_, w)) = fixtures.wedges.iter().find(|(n, _)| n == name) {
        sample_flat_wedge(w, entry, plan, s)
    } else {
        sample_flat(a, entry, plan, s)
    }
}

/// The two-generator model has holonomy presentation `[x,y] = e*y` with
/// `e = +-1`, and after rescaling the generator the quotient's structure
/// constants are exactly the catalog's solvable algebra.
pub fn check_golden_holonomy(catalog: &Catalog) -> TheoremReport {
    let mut check = Check::new("golden_holonomy_sol2");
    check.fixture("solvable");
    let a = Arc::new(fixtures::solvable_model());
    let p = holonomy_presentation(&a);
    let point = vec![p.rel_linear.row(0).iter().map(|c| c.to_string()).collect()];

    let shape_ok = p.gens == 2 && p.relations() == 1;
    check.check("presentation-shape", shape_ok, || {
        ce(point.clone(), "expected 2 generators and 1 relation")
    });
    if !shape_ok {
        return check.finish();
    }

    // normalize the relation: q [x,y] + alpha x + beta y = 0
    let q = p.rel_quadratic[0].at(0, 1).clone();
    let alpha = p.rel_linear.at(0, 0).clone();
    let beta = p.rel_linear.at(0, 1).clone();
    let form_ok = !q.is_zero() && alpha.is_zero() && {
        let eps = -(beta.clone() / &q);
        eps == rint(1) || eps == rint(-1)
    };
    check.check("relation-form", form_ok, || {
        ce(point.clone(), "relation is not [x,y] = (+-1) y")
    });
    if !form_ok {
        return check.finish();
    }

    let eps = -(beta / &q);
    let quot = p.two_dim_quotient().expect("nonzero bracket coefficient");
    // rescale x -> eps * x so [x', y] = y
    let basis = Mat::from_rows(vec![vec![eps, rint(0)], vec![rint(0), rint(1)]]);
    let rebased = quot.in_basis(&basis).expect("invertible rescaling");
    let mut constants_ok = true;
    for i in 0..2 {
        for j in 0..2 {
            if rebased.bracket_basis(i, j) != catalog.sol2.lie.bracket_basis(i, j) {
                constants_ok = false;
            }
        }
    }
    check.check("catalog-constants", constants_ok, || {
        ce(
            point.clone(),
            "rescaled quotient constants differ from the solvable catalog entry",
        )
    });
    check.finish()
}

/// Membership of `t x` in the degree-1 locus holds exactly at t = 0 and
/// t = 1, over an integer grid and random rational heights.
pub fn check_golden_resonance_line(catalog: &Catalog, plan: &SamplePlan) -> TheoremReport {
    let mut check = Check::new("golden_resonance_line");
    check.fixture("solvable");
    let a = Arc::new(fixtures::solvable_model());
    let rep = &catalog.ab1.rep;
    let lie = catalog.ab1.lie.clone();

    let run = |check: &mut Check, family: &str, t: Rat| {
        let conn = Connection::new(
            a.clone(),
            lie.clone(),
            fixtures::single_entry_coeffs(a.dim(1), 1, 0, 0, t.clone()),
        )
        .expect("shape");
        let got = member(&a, rep, &conn, 1);
        let expected = t == rint(0) || t == rint(1);
        check.check(family, got == expected, || {
            ce_sides(
                point_of(&conn),
                1,
                got,
                expected,
                format!("membership of t = {t} disagrees with {{0, 1}}"),
            )
        });
    };

    for t in plan.grid_lo..=plan.grid_hi {
        run(&mut check, "grid", rint(t));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed ^ salt("golden-line"));
    for _ in 0..plan.random_line.max(50) {
        let t = rand_rat(&mut rng, plan.height * 5);
        run(&mut check, "random", t);
    }
    check.finish()
}

/// Degree-0 membership for the one-generator algebra with the identity
/// representation of gl2 is exactly the singular locus, by both the kernel
/// route and the Aomoto route.
pub fn check_golden_r0(catalog: &Catalog, plan: &SamplePlan) -> TheoremReport {
    let mut check = Check::new("golden_r0_gl2");
    check.fixture("ext1");
    let a = Arc::new(fixtures::exterior(&["e"], 1));
    let p = holonomy_presentation(&a);
    let entry = &catalog.gl2;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed ^ salt("golden-r0"));

    let mut gs: Vec<Vec<Rat>> = vec![
        vec![rint(1), rint(0), rint(0), rint(0)],
        vec![rint(1), rint(0), rint(0), rint(1)],
        vec![rint(0), rint(0), rint(0), rint(0)],
    ];
    for _ in 0..200.max(plan.generic) {
        gs.push((0..4).map(|_| rand_rat(&mut rng, plan.height)).collect());
    }

    for g in gs {
        let expected = entry.rep.apply(&g).det().expect("square").is_zero();
        let phi = LieMapCandidate {
            values: Mat::from_cols(4, &[g.clone()]),
        };
        let via_kernels = r0_membership_by_kernels(&p, &entry.rep, &phi)
            .expect("free presentation admits any values");
        let conn = phi
            .as_connection(a.clone(), entry.lie.clone())
            .expect("shape");
        let via_aomoto = member(&a, &entry.rep, &conn, 0);
        check.check(
            "determinant-locus",
            via_kernels == expected && via_aomoto == expected,
            || {
                ce_sides(
                    point_of(&conn),
                    0,
                    via_kernels,
                    expected,
                    "degree-0 membership disagrees with det = 0",
                )
            },
        );
    }
    check.finish()
}

/// At the zero connection, depth-1 membership in degree i holds exactly
/// when the untwisted Betti number b_i is nonzero, across all fixtures,
/// representations and degrees.
pub fn check_zero_point_betti(fixtures_set: &FixtureSet, catalog: &Catalog) -> TheoremReport {
    let mut check = Check::new("zero_point_betti");
    for (name, a) in all_algebras(fixtures_set) {
        check.fixture(&name);
        for (tname, entry) in catalog.targets() {
            let conn = Connection::zero(a.clone(), entry.lie.clone());
            for i in 0..=a.q() {
                let got = member(&a, &entry.rep, &conn, i);
                let expected = a.cohomology_dim(i).expect("degree in range") != 0;
                check.check(&name, got == expected, || {
                    ce_sides(
                        point_of(&conn),
                        i,
                        got,
                        expected,
                        format!("zero-point membership vs b_{i} with target {tname}"),
                    )
                });
            }
        }
    }
    check.finish()
}

/// Degree-0 membership by stacked kernels agrees with the Aomoto route at
/// every sampled flat point.
pub fn check_r0_kernel_consistency(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("r0_kernel_consistency");
    for (name, a) in all_algebras(fixtures_set) {
        check.fixture(&name);
        let p = holonomy_presentation(&a);
        for (tname, entry) in catalog.targets() {
            let family = format!("{name}/{tname}");
            for s in flats_for(fixtures_set, &name, &a, entry, plan, "r0cons") {
                let phi = s.connection.as_lie_map();
                let via_kernels = match r0_membership_by_kernels(&p, &entry.rep, &phi) {
                    Ok(v) => v,
                    Err(e) => {
                        check.check(&family, false, || {
                            ce(point_of(&s.connection), format!("kernel route failed: {e}"))
                        });
                        continue;
                    }
                };
                let via_aomoto = member(&a, &entry.rep, &s.connection, 0);
                check.check(&family, via_kernels == via_aomoto, || {
                    ce_sides(
                        point_of(&s.connection),
                        0,
                        via_kernels,
                        via_aomoto,
                        "kernel route and Aomoto route disagree in degree 0",
                    )
                });
            }
        }
    }
    check.finish()
}

/// Flatness coincides with killing the holonomy relations, and the
/// essentially-rank-one locus with rank-at-most-one morphisms, on flat
/// samples and non-flat rejection samples alike.
pub fn check_flat_hom_correspondence(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("flat_hom_correspondence");
    for (name, a) in all_algebras(fixtures_set) {
        check.fixture(&name);
        let p = holonomy_presentation(&a);
        for (tname, entry) in catalog.targets() {
            let mut candidates: Vec<(String, Connection)> = Vec::new();
            for s in flats_for(fixtures_set, &name, &a, entry, plan, "lemma-hom") {
                candidates.push((format!("flat/{name}/{tname}"), s.connection));
            }
            let s = salt(&format!("lemma-hom-nf/{name}/{tname}"));
            for conn in sample::sample_nonflat(&a, entry, plan, s, 100) {
                candidates.push((format!("nonflat/{name}/{tname}"), conn));
            }
            for (family, conn) in candidates {
                let flat = conn.is_flat();
                let phi = conn.as_lie_map();
                let kills = p.kills_relations(&entry.lie, &phi);
                let ess = conn.is_essentially_rank_one();
                let hom1 = kills && phi.has_rank_at_most_one_image();
                check.check(&family, flat == kills && ess == hom1, || {
                    ce(
                        point_of(&conn),
                        format!(
                            "flat={flat} kills={kills} essrk1={ess} hom1={hom1}"
                        ),
                    )
                });
            }
        }
    }
    check.finish()
}

/// Twisted Betti numbers in degrees 0 and 1 match the presented
/// Lie-algebra cohomology at every sampled flat point.
pub fn check_lie_vs_aomoto(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("lie_vs_aomoto_betti");
    for (name, a) in all_algebras(fixtures_set) {
        check.fixture(&name);
        let p = holonomy_presentation(&a);
        for (tname, entry) in catalog.targets() {
            let family = format!("{name}/{tname}");
            for s in flats_for(fixtures_set, &name, &a, entry, plan, "lemma-betti") {
                let phi = s.connection.as_lie_map();
                for i in 0..=1usize {
                    let lie_dim = match lie_low_cohomology_dim(&p, &entry.rep, &phi, i) {
                        Ok(v) => v,
                        Err(e) => {
                            check.check(&family, false, || {
                                ce(
                                    point_of(&s.connection),
                                    format!("lie cohomology failed in degree {i}: {e}"),
                                )
                            });
                            continue;
                        }
                    };
                    let aomoto = twisted_betti(&a, &entry.rep, &s.connection, i)
                        .expect("flat point in range");
                    check.check(&family, lie_dim == aomoto, || {
                        ce(
                            point_of(&s.connection),
                            format!(
                                "degree {i}: lie route {lie_dim} vs aomoto route {aomoto}"
                            ),
                        )
                    });
                }
            }
        }
    }
    check.finish()
}

/// On zero-differential fixtures, rank-one membership matches the
/// criterion "factor resonant or singular action", across singular and
/// nonsingular actions.
pub fn check_rank_one_criterion(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("rank_one_criterion");
    let algebras: Vec<(String, Arc<Cdga>)> = all_algebras(fixtures_set)
        .into_iter()
        .filter(|(_, a)| a.is_zero_differential())
        .collect();
    for (name, a) in algebras {
        check.fixture(&name);
        for (tname, entry) in catalog.targets() {
            let mut rng = ChaCha8Rng::seed_from_u64(
                plan.seed ^ salt(&format!("rank1/{name}/{tname}")),
            );
            let d = entry.lie.dim();
            let mut points: Vec<(Vec<Rat>, Vec<Rat>)> = Vec::new();
            for k in 0..d {
                let mut g = vec![Rat::zero(); d];
                g[k] = rint(1);
                points.push((vec![rint(1); a.dim(1)], g));
            }
            points.push((vec![rint(1); a.dim(1)], vec![rint(1); d]));
            for _ in 0..plan.rank_one.max(50) {
                let eta: Vec<Rat> = (0..a.dim(1)).map(|_| rand_rat(&mut rng, plan.height)).collect();
                let g: Vec<Rat> = (0..d).map(|_| rand_rat(&mut rng, plan.height)).collect();
                points.push((eta, g));
            }
            for (eta, g) in points {
                let singular = entry.rep.apply(&g).det().expect("square").is_zero();
                let family = format!(
                    "{}/{tname}",
                    if singular { "singular" } else { "nonsingular" }
                );
                let conn = Connection::rank_one(a.clone(), entry.lie.clone(), &eta, &g)
                    .expect("shape");
                for i in 0..=a.q() {
                    if a.dim(i) == 0 {
                        continue;
                    }
                    let crit = rank_one_resonance_criterion(&a, &entry.rep, &eta, &g, i)
                        .expect("zero differential fixture");
                    let direct = member(&a, &entry.rep, &conn, i);
                    check.check(&family, crit == direct, || {
                        ce_sides(
                            point_of(&conn),
                            i,
                            crit,
                            direct,
                            format!("criterion vs direct membership on {name}"),
                        )
                    });
                }
            }
        }
    }
    check.finish()
}

/// Upper bound for products: a degree-q resonant flat connection has both
/// components resonant somewhere at or below q.
pub fn check_product_upper_bound(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("product_upper_bound");
    let plan = &SamplePlan {
        rank_one: plan
            .rank_one
            .max(200usize.saturating_sub(plan.left_only + plan.right_only)),
        ..plan.clone()
    };
    let targets = [
        ("abelian(2)", &catalog.ab2),
        ("sol2", &catalog.sol2),
        ("sl2", &catalog.sl2),
        ("gl2", &catalog.gl2),
    ];
    for (name, w) in &fixtures_set.products {
        check.fixture(name);
        for (tname, entry) in targets {
            let family = format!("{name}/{tname}");
            let s = salt(&format!("upper/{name}/{tname}"));
            for smp in sample_flat_product(w, entry, plan, s) {
                let omega = &smp.connection;
                let (left, right) = w.split_connection(omega).expect("shape");
                let mut bad_degree = None;
                for qd in 0..=w.product.q() {
                    if !member(&w.product, &entry.rep, omega, qd) {
                        continue;
                    }
                    let left_hit =
                        (0..=qd.min(w.left.q())).any(|i| member(&w.left, &entry.rep, &left, i));
                    let right_hit = (0..=qd.min(w.right.q()))
                        .any(|j| member(&w.right, &entry.rep, &right, j));
                    if !(left_hit && right_hit) {
                        bad_degree = Some((qd, left_hit, right_hit));
                        break;
                    }
                }
                check.check(&family, bad_degree.is_none(), || {
                    let (qd, lh, rh) = bad_degree.expect("failure recorded");
                    ce_sides(
                        point_of(omega),
                        qd,
                        lh,
                        rh,
                        "resonant product point with a non-resonant component",
                    )
                });
            }
        }
    }
    check.finish()
}

/// Strictness of the product upper bound at gl2: degree-0 membership on
/// the two-line product is commuting pairs with a joint kernel, which is
/// strictly smaller than pairs of singular matrices.
pub fn check_product_strictness(catalog: &Catalog, plan: &SamplePlan) -> TheoremReport {
    let mut check = Check::new("product_strictness");
    check.fixture("ext1_x_ext1b");
    let left = Arc::new(fixtures::exterior_q(&["e"], 2));
    let right = Arc::new(fixtures::exterior_q(&["f"], 2));
    let w = crate::constructions::tensor_product(&left, &right).expect("valid");
    let entry = &catalog.gl2;

    let eval = |g: &Vec<Rat>, h: &Vec<Rat>| -> (Connection, bool, bool) {
        let lconn =
            Connection::rank_one(left.clone(), entry.lie.clone(), &[rint(1)], g).expect("shape");
        let rconn =
            Connection::rank_one(right.clone(), entry.lie.clone(), &[rint(1)], h).expect("shape");
        let omega = w.merge_connection(&lconn, &rconn).expect("shape");
        let is_member = omega.is_flat() && member(&w.product, &entry.rep, &omega, 0);
        let stacked = entry.rep.apply(g).vstack(&entry.rep.apply(h));
        let expected = entry.lie.commutes(g, h) && stacked.rank() < entry.rep.v_dim();
        (omega, is_member, expected)
    };

    // explicit witness: diag(1,0) and diag(0,1)
    let g = vec![rint(1), rint(0), rint(0), rint(0)];
    let h = vec![rint(0), rint(0), rint(0), rint(1)];
    let (omega, is_member, _) = eval(&g, &h);
    let g_singular = entry.rep.apply(&g).det().expect("square").is_zero();
    let h_singular = entry.rep.apply(&h).det().expect("square").is_zero();
    let in_rhs = omega.is_flat() && g_singular && h_singular;
    check.check("witness", in_rhs && !is_member, || {
        ce(
            point_of(&omega),
            "witness must sit in the bound but outside the degree-0 locus",
        )
    });

    // shared-kernel and invertible sanity points
    let (_, m, e) = eval(&g, &g.clone());
    check.check("shared-singular", m && e, || {
        ce(vec![], "(g, g) with singular g must be a member")
    });
    let id = vec![rint(1), rint(0), rint(0), rint(1)];
    let (_, m, e) = eval(&id, &id.clone());
    check.check("invertible", !m && !e, || {
        ce(vec![], "(id, id) must not be a member")
    });

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed ^ salt("strictness"));
    for _ in 0..200.max(plan.generic) {
        let g: Vec<Rat> = (0..4).map(|_| rand_rat(&mut rng, plan.height)).collect();
        let h: Vec<Rat> = (0..4).map(|_| rand_rat(&mut rng, plan.height)).collect();
        let (omega, is_member, expected) = eval(&g, &h);
        check.check("random-pairs", is_member == expected, || {
            ce_sides(
                point_of(&omega),
                0,
                is_member,
                expected,
                "membership vs commuting-with-joint-kernel",
            )
        });
    }
    check.finish()
}

/// Equality for zero-differential products with sl2/sol2: membership in
/// degree q coincides with a component decomposition i + j = q, in both
/// directions, across the trichotomy families.
pub fn check_product_equality(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("product_equality");
    let boosted = SamplePlan {
        rank_one: plan.rank_one.max(100),
        left_only: plan.left_only.max(100),
        right_only: plan.right_only.max(100),
        generic: plan.generic.max(100),
        ..plan.clone()
    };
    let (name, w) = fixtures_set
        .products
        .iter()
        .find(|(n, _)| n == "ext2_x_ext1b")
        .expect("shipped fixture");
    check.fixture(name);
    for (tname, entry) in [("sl2", &catalog.sl2), ("sol2", &catalog.sol2)] {
        let s = salt(&format!("equality/{name}/{tname}"));
        for smp in sample_flat_product(w, entry, &boosted, s) {
            let omega = &smp.connection;
            let (left, right) = w.split_connection(omega).expect("shape");
            for qd in 0..=w.product.q() {
                let family = format!("{tname}/q{qd}/{}", smp.family);
                let lhs = member(&w.product, &entry.rep, omega, qd);
                let rhs = (0..=qd).any(|i| {
                    let j = qd - i;
                    i <= w.left.q()
                        && j <= w.right.q()
                        && member(&w.left, &entry.rep, &left, i)
                        && member(&w.right, &entry.rep, &right, j)
                });
                check.check(&family, lhs == rhs, || {
                    ce_sides(
                        point_of(omega),
                        qd,
                        lhs,
                        rhs,
                        "product membership vs component decomposition",
                    )
                });
            }
        }
    }
    check.finish()
}

/// Every sampled flat connection on a product with sl2/sol2 classifies
/// into exactly one trichotomy family.
pub fn check_trichotomy(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("trichotomy");
    for (name, w) in &fixtures_set.products {
        check.fixture(name);
        for (tname, entry) in [("sl2", &catalog.sl2), ("sol2", &catalog.sol2)] {
            let family = format!("{name}/{tname}");
            let s = salt(&format!("trichotomy/{name}/{tname}"));
            for smp in sample_flat_product(w, entry, plan, s) {
                let verdict = trichotomy_classify(w, &smp.connection);
                check.check(&family, verdict.is_ok(), || {
                    ce(
                        point_of(&smp.connection),
                        format!("classification failed: {:?}", verdict),
                    )
                });
            }
        }
    }
    check.finish()
}

/// Product presentations equal the prediction: both factors' relations
/// plus cross-commutation relations, as exact coefficient data.
pub fn check_presentation_product(fixtures_set: &FixtureSet) -> TheoremReport {
    let mut check = Check::new("presentation_product");
    for (name, w) in &fixtures_set.products {
        check.fixture(name);
        let actual = holonomy_presentation(&w.product);
        let predicted = predicted_product_presentation(w);
        check.check(name, actual == predicted, || {
            ce(
                vec![],
                format!("presentation of {name} differs from the predicted relation set"),
            )
        });
    }
    check.finish()
}

/// Wedge presentations equal the prediction: the union of the factors'
/// relations and nothing else.
pub fn check_presentation_wedge(fixtures_set: &FixtureSet) -> TheoremReport {
    let mut check = Check::new("presentation_wedge");
    for (name, w) in &fixtures_set.wedges {
        check.fixture(name);
        let actual = holonomy_presentation(&w.wedge);
        let predicted = predicted_wedge_presentation(w);
        check.check(name, actual == predicted, || {
            ce(
                vec![],
                format!("presentation of {name} differs from the predicted relation set"),
            )
        });
    }
    check.finish()
}

/// The twisted differential on a wedge splits blockwise: diagonal blocks
/// in positive degrees, stacked columns in degree 0.
fn wedge_blocks_match(
    w: &WedgeWitness,
    rep: &Representation,
    omega: &Connection,
    left: &Connection,
    right: &Connection,
) -> bool {
    let vdim = rep.v_dim();
    let full = aomoto_deltas(&w.wedge, rep, omega).expect("compatible");
    let dl = aomoto_deltas(&w.left, rep, left).expect("compatible");
    let dr = aomoto_deltas(&w.right, rep, right).expect("compatible");
    for i in 0..=w.wedge.q() {
        let rows_l = w.left.dim(i + 1) * vdim;
        let cols_l = w.left.dim(i) * vdim;
        let rows_r = w.right.dim(i + 1) * vdim;
        let cols_r = w.right.dim(i) * vdim;
        if i == 0 {
            let top = full[0].block(0, 0, rows_l, vdim);
            let bottom = full[0].block(rows_l, 0, rows_r, vdim);
            if top != dl[0] || bottom != dr[0] {
                return false;
            }
        } else {
            if full[i].block(0, 0, rows_l, cols_l) != dl[i] {
                return false;
            }
            if full[i].block(rows_l, cols_l, rows_r, cols_r) != dr[i] {
                return false;
            }
            if !full[i].block(0, cols_l, rows_l, cols_r).is_zero()
                || !full[i].block(rows_l, 0, rows_r, cols_l).is_zero()
            {
                return false;
            }
        }
    }
    true
}

/// Above degree 1, wedge membership is the union of component memberships;
/// the block decomposition of the twisted differential is checked at every
/// point.
pub fn check_wedge_higher(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("wedge_higher");
    let plan = &SamplePlan {
        rank_one: plan
            .rank_one
            .max(200usize.saturating_sub(plan.left_only + plan.right_only)),
        ..plan.clone()
    };
    let names = ["ext2_v_ext2b", "solvable_v_ext2b"];
    for name in names {
        let (_, w) = fixtures_set
            .wedges
            .iter()
            .find(|(n, _)| n == name)
            .expect("shipped fixture");
        check.fixture(name);
        for (tname, entry) in catalog.targets() {
            let family = format!("{name}/{tname}");
            let s = salt(&format!("wedge-higher/{name}/{tname}"));
            for smp in sample_flat_wedge(w, entry, plan, s) {
                let omega = &smp.connection;
                let (left, right) = w.split_connection(omega).expect("shape");
                let i = 2usize;
                let lhs = member(&w.wedge, &entry.rep, omega, i);
                let rhs = member(&w.left, &entry.rep, &left, i)
                    || member(&w.right, &entry.rep, &right, i);
                let blocks = wedge_blocks_match(w, &entry.rep, omega, &left, &right);
                check.check(&family, lhs == rhs && blocks, || {
                    ce_sides(
                        point_of(omega),
                        i,
                        lhs,
                        rhs,
                        if blocks {
                            "wedge membership vs component union"
                        } else {
                            "twisted differential does not decompose blockwise"
                        },
                    )
                });
            }
        }
    }
    check.finish()
}

/// With both first Betti numbers positive and one exceeding 1, every flat
/// connection on the wedge is degree-1 resonant; the kernel dimension and
/// injectivity identities for the comparison map hold at every point.
pub fn check_wedge_degree1(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> Result<TheoremReport> {
    let mut check = Check::new("wedge_degree1");
    let plan = &SamplePlan {
        rank_one: plan
            .rank_one
            .max(200usize.saturating_sub(plan.left_only + plan.right_only)),
        ..plan.clone()
    };
    let names = ["ext2_v_ext1b", "solvable_v_ext2b"];
    for name in names {
        let (_, w) = fixtures_set
            .wedges
            .iter()
            .find(|(n, _)| n == name)
            .expect("shipped fixture");
        let b1l = w.left.cohomology_dim(1).expect("in range");
        let b1r = w.right.cohomology_dim(1).expect("in range");
        if b1l == 0 || b1r == 0 || b1l.max(b1r) <= 1 {
            return Err(Error::HypothesisUnmet(format!(
                "{name}: needs positive first Betti numbers with one exceeding 1 (got {b1l}, {b1r})"
            )));
        }
        check.fixture(name);
        for (tname, entry) in catalog.targets() {
            let family = format!("{name}/{tname}");
            let s = salt(&format!("wedge-deg1/{name}/{tname}"));
            for smp in sample_flat_wedge(w, entry, plan, s) {
                let omega = &smp.connection;
                let (left, right) = w.split_connection(omega).expect("shape");
                let vdim = entry.rep.v_dim();

                let b1_full = twisted_betti(&w.wedge, &entry.rep, omega, 1).expect("flat");
                let resonant = b1_full >= 1;

                let b1_l = twisted_betti(&w.left, &entry.rep, &left, 1).expect("flat");
                let b1_r = twisted_betti(&w.right, &entry.rep, &right, 1).expect("flat");
                let d0_l = aomoto_deltas(&w.left, &entry.rep, &left).expect("compatible")[0]
                    .clone();
                let d0_r = aomoto_deltas(&w.right, &entry.rep, &right).expect("compatible")[0]
                    .clone();

                // kernel dimension of the comparison map, two ways
                let ker_dim = b1_full - (b1_l + b1_r);
                let expected_ker =
                    d0_l.rank() + d0_r.rank() - d0_l.vstack(&d0_r).rank();
                // injectivity iff V = Z0 + Z0bar
                let z_l = Mat::from_cols(vdim, &d0_l.kernel_basis());
                let z_r = Mat::from_cols(vdim, &d0_r.kernel_basis());
                let sum_dim = z_l.hstack(&z_r).rank();

                let ok = resonant
                    && ker_dim == expected_ker
                    && (ker_dim == 0) == (sum_dim == vdim);
                check.check(&family, ok, || {
                    ce(
                        point_of(omega),
                        format!(
                            "b1={b1_full} (components {b1_l}+{b1_r}), ker={ker_dim} expected {expected_ker}, sum_dim={sum_dim}/{vdim}"
                        ),
                    )
                });
            }
        }
    }
    Ok(check.finish())
}

/// Structural battery: the twisted differential squares to zero on flat
/// samples and visibly fails to on a non-flat witness; the module chain
/// identity holds on all basis triples; untwisted product cohomology is
/// multiplicative.
pub fn check_structural(
    fixtures_set: &FixtureSet,
    catalog: &Catalog,
    plan: &SamplePlan,
) -> TheoremReport {
    let mut check = Check::new("structural");

    for (name, a) in all_algebras(fixtures_set) {
        check.fixture(&name);
        for (tname, entry) in catalog.targets() {
            let family = format!("dsquare-flat/{name}/{tname}");
            let samples = flats_for(fixtures_set, &name, &a, entry, plan, "structural");
            for s in &samples {
                let deltas = aomoto_deltas(&a, &entry.rep, &s.connection).expect("compatible");
                let ok = (0..deltas.len() - 1).all(|i| deltas[i + 1].mul(&deltas[i]).is_zero());
                check.check(&family, ok, || {
                    ce(
                        point_of(&s.connection),
                        "twisted differential fails to square to zero at a flat point",
                    )
                });
            }

            // chain identity on a few points per pair (full basis-triple sweep each)
            for s in samples.iter().take(3) {
                let ok = module_structure_chain_check(&a, &entry.rep, &s.connection)
                    .expect("flat point");
                check.check(&format!("chain-identity/{name}/{tname}"), ok, || {
                    ce(
                        point_of(&s.connection),
                        "module-structure chain identity fails on a basis triple",
                    )
                });
            }

            // non-flat witnesses for non-abelian targets, where they exist
            if matches!(entry.lie.name(), "sl2" | "sol2" | "gl2") {
                let s = salt(&format!("structural-nf/{name}/{tname}"));
                let witnesses = sample::sample_nonflat(&a, entry, plan, s, 5);
                for conn in &witnesses {
                    let deltas = aomoto_deltas(&a, &entry.rep, conn).expect("compatible");
                    let broken =
                        (0..deltas.len() - 1).any(|i| !deltas[i + 1].mul(&deltas[i]).is_zero());
                    check.check(&format!("dsquare-nonflat/{name}/{tname}"), broken, || {
                        ce(
                            point_of(conn),
                            "non-flat witness still satisfies d^2 = 0 (gate would be vacuous)",
                        )
                    });
                }
            }
        }
    }

    for (name, w) in &fixtures_set.products {
        let family = format!("kunneth/{name}");
        for n in 0..=w.product.q() {
            let mut expected = 0usize;
            for i in 0..=n {
                expected += w.left.cohomology_dim(i).expect("range")
                    * w.right.cohomology_dim(n - i).expect("range");
            }
            let got = w.product.cohomology_dim(n).expect("range");
            check.check(&family, got == expected, || {
                ce(
                    vec![],
                    format!("b_{n}({name}) = {got}, expected {expected} by multiplicativity"),
                )
            });
        }
    }
    check.finish()
}
