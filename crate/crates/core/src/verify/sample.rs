//! Deterministic sampling of flat connections.
//!
//! Families:
//!
//! * `rank-one` — `eta (x) g` with `eta` a random combination of closed
//!   1-forms and `g` random in the target; flat by construction.
//! * `generic` — all generator values random except one, with the remaining
//!   value solved from the relation system (which is linear in any single
//!   unknown value). This reaches flat points of full rank on fixtures with
//!   nonzero differential and non-abelian targets.
//! * `left-only` / `right-only` (products) — a flat connection on one
//!   factor merged with zero on the other.
//! * `pair` (wedges) — merges of independently sampled factor points.
//!
//! Every emitted point is re-checked with the curvature test; nothing is
//! trusted from construction. Sampling is a pure function of
//! `(plan.seed, salt, fixture shape)`.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdga::Cdga;
use crate::connection::{holonomy_presentation, Connection, HolonomyPresentation};
use crate::constructions::{ProductWitness, WedgeWitness};
use crate::lie::CatalogEntry;
use crate::linalg::{rint, Mat, Rat};

use super::SamplePlan;

/// A sampled flat connection tagged with its generating family.
#[derive(Clone, Debug)]
pub struct Sample {
    pub family: &'static str,
    pub connection: Connection,
}

/// Stable string hash for deriving per-checker RNG streams from the seed.
pub fn salt(label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn rng_for(plan: &SamplePlan, salt_value: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(plan.seed ^ salt_value)
}

pub fn rand_rat(rng: &mut ChaCha8Rng, height: u32) -> Rat {
    let h = height as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    Rat::new(num.into(), den.into())
}

fn rand_vec(rng: &mut ChaCha8Rng, len: usize, height: u32) -> Vec<Rat> {
    (0..len).map(|_| rand_rat(rng, height)).collect()
}

fn combine(basis: &[Vec<Rat>], coeffs: &[Rat], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (v, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * c;
        }
    }
    out
}

/// Rank-one points `eta (x) g`, `eta` closed.
fn rank_one_points(
    a: &Arc<Cdga>,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<Sample> {
    let closed = a.closed_one_forms();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let eta = if closed.is_empty() {
            vec![Rat::zero(); a.dim(1)]
        } else {
            let coeffs = rand_vec(rng, closed.len(), plan.height);
            combine(&closed, &coeffs, a.dim(1))
        };
        let g = rand_vec(rng, entry.lie.dim(), plan.height);
        let conn = Connection::rank_one(a.clone(), entry.lie.clone(), &eta, &g)
            .expect("shapes match");
        debug_assert!(conn.is_flat());
        if conn.is_flat() {
            out.push(Sample {
                family: "rank-one",
                connection: conn,
            });
        }
    }
    out
}

/// Solves the relation system for the value of generator `pivot`, all other
/// values fixed. The system is linear in the remaining unknown; the answer
/// is a random point of its full solution space (particular solution plus a
/// random kernel combination), so positive-dimensional families are not
/// collapsed to a single point.
fn solve_for_generator(
    p: &HolonomyPresentation,
    lie: &crate::lie::LieAlgebra,
    values: &[Vec<Rat>],
    pivot: usize,
    plan: &SamplePlan,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Rat>> {
    let d = lie.dim();
    let rels = p.relations();
    if rels == 0 {
        return Some(values[pivot].clone());
    }
    let mut system = Mat::zeros(rels * d, d);
    let mut rhs = vec![Rat::zero(); rels * d];
    for m in 0..rels {
        // constant contributions from the fixed values
        let mut constant = vec![Rat::zero(); d];
        for k in 0..p.gens {
            if k == pivot {
                continue;
            }
            let c = p.rel_linear.at(m, k);
            if !c.is_zero() {
                for (o, v) in constant.iter_mut().zip(&values[k]) {
                    *o += v * c;
                }
            }
        }
        for j in 0..p.gens {
            for k in j + 1..p.gens {
                if j == pivot || k == pivot {
                    continue;
                }
                let qc = p.rel_quadratic[m].at(j, k);
                if qc.is_zero() {
                    continue;
                }
                let br = lie.bracket_vec(&values[j], &values[k]);
                for (o, v) in constant.iter_mut().zip(br) {
                    *o += &v * qc;
                }
            }
        }
        // operator acting on the unknown value w
        let mut op = Mat::zeros(d, d);
        let lc = p.rel_linear.at(m, pivot);
        if !lc.is_zero() {
            op = op.add(&Mat::identity(d).scale(lc));
        }
        for k in 0..p.gens {
            if k == pivot {
                continue;
            }
            let (qc, sign) = if pivot < k {
                (p.rel_quadratic[m].at(pivot, k).clone(), -1i64)
            } else {
                (p.rel_quadratic[m].at(k, pivot).clone(), 1i64)
            };
            if qc.is_zero() {
                continue;
            }
            // [w, v_k] = -ad(v_k)(w); [v_k, w] = ad(v_k)(w)
            op = op.add(&lie.ad(&values[k]).scale(&(qc * rint(sign))));
        }
        for r in 0..d {
            for c in 0..d {
                *system.at_mut(m * d + r, c) = op.at(r, c).clone();
            }
            rhs[m * d + r] = -constant[r].clone();
        }
    }
    let mut w = system.solve(&rhs)?;
    for basis_vec in system.kernel_basis() {
        let c = rand_rat(rng, plan.height);
        if c.is_zero() {
            continue;
        }
        for (o, x) in w.iter_mut().zip(&basis_vec) {
            *o += x * &c;
        }
    }
    Some(w)
}

/// Generic flat points by rotating the solved-for generator.
fn generic_points(
    a: &Arc<Cdga>,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<Sample> {
    let p = holonomy_presentation(a);
    let gens = p.gens;
    let d = entry.lie.dim();
    let mut out = Vec::with_capacity(count);
    if gens == 0 {
        return out;
    }
    let mut tries = 0usize;
    while out.len() < count && tries < count * 30 {
        tries += 1;
        let pivot = tries % gens;
        // alternate fully random values with sparse eigen-friendly ones
        // (small multiples of basis vectors), which hit the thin solution
        // families that dense random rationals never satisfy exactly
        let sparse = tries % 3 == 0;
        let mut values: Vec<Vec<Rat>> = (0..gens)
            .map(|_| {
                if sparse {
                    let mut v = vec![Rat::zero(); d];
                    let k = rng.gen_range(0..d);
                    let scales = [rint(1), rint(-1), rint(2), Rat::new(1.into(), 2.into())];
                    v[k] = scales[rng.gen_range(0..4)].clone();
                    v
                } else {
                    rand_vec(rng, d, plan.height)
                }
            })
            .collect();
        let Some(w) = solve_for_generator(&p, &entry.lie, &values, pivot, plan, rng) else {
            continue;
        };
        values[pivot] = w;
        let coeffs = Mat::from_fn(gens, d, |g, k| values[g][k].clone());
        let conn = Connection::new(a.clone(), entry.lie.clone(), coeffs).expect("shapes match");
        if conn.is_flat() {
            out.push(Sample {
                family: "generic",
                connection: conn,
            });
        }
    }
    out
}

/// Flat connections on a single algebra: rank-one and generic families.
pub fn sample_flat(
    a: &Arc<Cdga>,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    salt_value: u64,
) -> Vec<Sample> {
    let mut rng = rng_for(plan, salt_value);
    let mut out = rank_one_points(a, entry, plan, &mut rng, plan.rank_one);
    out.extend(generic_points(a, entry, plan, &mut rng, plan.generic));
    for s in &out {
        assert!(s.connection.is_flat(), "sampler emitted a non-flat point");
    }
    out
}

/// Flat connections on a tensor product: one-sided merges, rank-one points
/// and generic solutions of the full relation system.
pub fn sample_flat_product(
    w: &ProductWitness,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    salt_value: u64,
) -> Vec<Sample> {
    let mut rng = rng_for(plan, salt_value);
    let mut out = Vec::new();

    let left_plan = SamplePlan {
        rank_one: plan.left_only,
        generic: plan.left_only / 2 + 1,
        ..plan.clone()
    };
    let left_points = sample_flat(&w.left, entry, &left_plan, salt_value ^ salt("left"));
    for s in left_points.into_iter().take(plan.left_only) {
        let zero = Connection::zero(w.right.clone(), entry.lie.clone());
        let merged = w.merge_connection(&s.connection, &zero).expect("shapes");
        if merged.is_flat() {
            out.push(Sample {
                family: "left-only",
                connection: merged,
            });
        }
    }

    let right_plan = SamplePlan {
        rank_one: plan.right_only,
        generic: plan.right_only / 2 + 1,
        ..plan.clone()
    };
    let right_points = sample_flat(&w.right, entry, &right_plan, salt_value ^ salt("right"));
    for s in right_points.into_iter().take(plan.right_only) {
        let zero = Connection::zero(w.left.clone(), entry.lie.clone());
        let merged = w.merge_connection(&zero, &s.connection).expect("shapes");
        if merged.is_flat() {
            out.push(Sample {
                family: "right-only",
                connection: merged,
            });
        }
    }

    out.extend(rank_one_points(
        &w.product,
        entry,
        plan,
        &mut rng,
        plan.rank_one,
    ));
    out.extend(generic_points(
        &w.product,
        entry,
        plan,
        &mut rng,
        plan.generic,
    ));
    for s in &out {
        assert!(s.connection.is_flat(), "sampler emitted a non-flat point");
    }
    out
}

/// Flat connections on a wedge: merged factor pairs, rank-one and generic.
pub fn sample_flat_wedge(
    w: &WedgeWitness,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    salt_value: u64,
) -> Vec<Sample> {
    let mut rng = rng_for(plan, salt_value);
    let mut out = Vec::new();

    let pair_count = plan.left_only + plan.right_only;
    let sub_plan = SamplePlan {
        rank_one: pair_count,
        generic: pair_count / 2 + 1,
        ..plan.clone()
    };
    let lefts = sample_flat(&w.left, entry, &sub_plan, salt_value ^ salt("wedge-left"));
    let rights = sample_flat(&w.right, entry, &sub_plan, salt_value ^ salt("wedge-right"));
    for (l, r) in lefts.iter().zip(rights.iter().rev()).take(pair_count) {
        let merged = w
            .merge_connection(&l.connection, &r.connection)
            .expect("shapes");
        if merged.is_flat() {
            out.push(Sample {
                family: "pair",
                connection: merged,
            });
        }
    }

    out.extend(rank_one_points(&w.wedge, entry, plan, &mut rng, plan.rank_one));
    out.extend(generic_points(&w.wedge, entry, plan, &mut rng, plan.generic));
    for s in &out {
        assert!(s.connection.is_flat(), "sampler emitted a non-flat point");
    }
    out
}

/// Non-flat candidates by rejection sampling of random coefficients. May
/// return fewer than requested (or none, on fixtures whose whole connection
/// space is flat).
pub fn sample_nonflat(
    a: &Arc<Cdga>,
    entry: &CatalogEntry,
    plan: &SamplePlan,
    salt_value: u64,
    count: usize,
) -> Vec<Connection> {
    let mut rng = rng_for(plan, salt_value ^ salt("nonflat"));
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count && tries < count * 50 {
        tries += 1;
        let coeffs = Mat::from_fn(a.dim(1), entry.lie.dim(), |_, _| {
            rand_rat(&mut rng, plan.height)
        });
        let conn = Connection::new(a.clone(), entry.lie.clone(), coeffs).expect("shapes match");
        if !conn.is_flat() {
            out.push(conn);
        }
    }
    out
}
