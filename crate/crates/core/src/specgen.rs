//! Deterministic generators of consistent geometry data, used by property
//! tests and benchmarks.
//!
//! Random specs come in two flavours that are consistent by construction:
//! perfect Morse data (zero differentials) with arbitrary
//! dimension-compatible coefficient tables, and nonzero Morse data with the
//! tables emptied. Both satisfy every validation identity and assemble to a
//! differential that squares to zero.

use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::exact_linalg::IntMatrix;
use crate::model::{
    AugClassEntry, EulerEntry, GeometrySpec, PlaneClassEntry, SigmaClassEntry, SigmaCritPoint,
    WCritPoint,
};
use crate::{rat, ratio, Int, Rational};

/// The cotangent bundle of the two-sphere, presented as the complement of
/// the diagonal in a product of two spheres: n = 2, tau_X = 2, K = 1, perfect
/// Morse data on both sides, Euler number 2, and the five sphere counts that
/// drive its differential.
pub fn t_star_s2_spec() -> GeometrySpec {
    GeometrySpec {
        n: 2,
        tau_x: rat(2),
        k_const: rat(1),
        sigma_crit: vec![
            SigmaCritPoint { name: "m".into(), morse_index: 0 },
            SigmaCritPoint { name: "M".into(), morse_index: 2 },
        ],
        w_crit: vec![
            WCritPoint { name: "e".into(), morse_index: 0 },
            WCritPoint { name: "c".into(), morse_index: 2 },
        ],
        d_sigma: IntMatrix::zeros(2, 2),
        d_w: IntMatrix::zeros(2, 2),
        euler_table: vec![EulerEntry { q: 0, p: 1, euler_number: Int::from(2) }],
        // One line through two points, area 2 in the hypersurface
        // normalization.
        gw_sigma: vec![SigmaClassEntry {
            q: 1,
            p: 0,
            omega_area: rat(2),
            coefficient: Int::from(1),
        }],
        // The two rulings, one plane each.
        gw_aug: vec![
            AugClassEntry { omega_area: rat(1), coefficient: Int::from(1) },
            AugClassEntry { omega_area: rat(1), coefficient: Int::from(1) },
        ],
        gw_plane: vec![
            // Rulings through a fixed interior maximum.
            PlaneClassEntry { x: 0, p: 1, omega_area: rat(1), coefficient: Int::from(1) },
            PlaneClassEntry { x: 0, p: 1, omega_area: rat(1), coefficient: Int::from(1) },
            // Rulings against the zero section: opposite signs.
            PlaneClassEntry { x: 1, p: 0, omega_area: rat(1), coefficient: Int::from(-1) },
            PlaneClassEntry { x: 1, p: 0, omega_area: rat(1), coefficient: Int::from(1) },
            // Doubled rulings miss the two-point constraint.
            PlaneClassEntry { x: 0, p: 0, omega_area: rat(2), coefficient: Int::from(0) },
            PlaneClassEntry { x: 0, p: 0, omega_area: rat(2), coefficient: Int::from(0) },
            // The diagonal-tangent class contributes once.
            PlaneClassEntry { x: 0, p: 0, omega_area: rat(2), coefficient: Int::from(1) },
        ],
    }
}

/// Bounds for [`random_spec`].
#[derive(Clone, Debug)]
pub struct SpecBounds {
    pub max_sigma_points: usize,
    pub max_w_points: usize,
    pub max_entries_per_table: usize,
}

impl Default for SpecBounds {
    fn default() -> Self {
        SpecBounds { max_sigma_points: 4, max_w_points: 3, max_entries_per_table: 6 }
    }
}

/// A random valid spec; deterministic in the seed.
pub fn random_spec(seed: u64, bounds: &SpecBounds) -> GeometrySpec {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.random_range(1..=3i64);

    // Keep K an integer multiple of the gap so that every area demanded by a
    // dimension condition yields an integral intersection number.
    let gap = ratio(rng.random_range(1..=3), rng.random_range(1..=2));
    let mult = rng.random_range(1..=3i64);
    let k_const = rat(mult) * gap.clone();
    let tau_x = &k_const + &gap;

    let n_sigma = rng.random_range(1..=bounds.max_sigma_points);
    let sigma_crit: Vec<SigmaCritPoint> = (0..n_sigma)
        .map(|i| SigmaCritPoint {
            name: format!("s{i}"),
            morse_index: rng.random_range(0..=(2 * n - 2)),
        })
        .collect();
    let n_w = rng.random_range(0..=bounds.max_w_points);
    let w_crit: Vec<WCritPoint> = (0..n_w)
        .map(|i| WCritPoint { name: format!("w{i}"), morse_index: rng.random_range(0..=2 * n) })
        .collect();

    let perfect = rng.random_bool(0.7);
    let mut spec = GeometrySpec {
        n,
        tau_x,
        k_const,
        sigma_crit,
        w_crit,
        d_sigma: IntMatrix::zeros(n_sigma, n_sigma),
        d_w: IntMatrix::zeros(n_w, n_w),
        euler_table: vec![],
        gw_sigma: vec![],
        gw_aug: vec![],
        gw_plane: vec![],
    };

    if perfect {
        fill_tables(&mut rng, &mut spec, bounds, &gap);
    } else {
        // Nonzero Morse data, no sphere counts. A partial matching squares
        // to zero because no point is both a source and a target. Base
        // targets drop the Morse index by 1; interior targets raise it,
        // since the interior grading is n minus the index.
        spec.d_sigma = random_matching_differential(
            &mut rng,
            spec.sigma_crit.iter().map(|p| p.morse_index).collect(),
            -1,
        );
        spec.d_w = random_matching_differential(
            &mut rng,
            spec.w_crit.iter().map(|p| p.morse_index).collect(),
            1,
        );
    }

    debug_assert!(crate::model::validate(&spec).is_ok(), "generated an invalid spec");
    spec
}

/// Fills the Euler and sphere tables with dimension-compatible entries.
fn fill_tables(rng: &mut StdRng, spec: &mut GeometrySpec, bounds: &SpecBounds, gap: &Rational) {
    let n = spec.n;
    let ns = spec.sigma_crit.len();
    let nw = spec.w_crit.len();

    // Euler pairs need an index difference of exactly 2.
    let euler_pairs: Vec<(usize, usize)> = (0..ns)
        .flat_map(|q| (0..ns).map(move |p| (q, p)))
        .filter(|&(q, p)| {
            spec.sigma_crit[p].morse_index - spec.sigma_crit[q].morse_index == 2
        })
        .collect();
    for &(q, p) in euler_pairs.iter().take(bounds.max_entries_per_table) {
        if rng.random_bool(0.7) {
            spec.euler_table.push(EulerEntry {
                q,
                p,
                euler_number: Int::from(rng.random_range(-3..=3i64)),
            });
        }
    }

    // Sphere classes: the tangent Chern number is pinned by the dimension
    // condition, and the area follows from it.
    let mut count = 0;
    'outer: for q in 0..ns {
        for p in 0..ns {
            if count >= bounds.max_entries_per_table {
                break 'outer;
            }
            if q == p {
                continue;
            }
            let mq = spec.sigma_crit[q].morse_index;
            let mp = spec.sigma_crit[p].morse_index;
            if (mq - mp) % 2 != 0 {
                continue;
            }
            let ct = (2 + mq - mp) / 2;
            if ct < 1 || ct > n || !rng.random_bool(0.5) {
                continue;
            }
            spec.gw_sigma.push(SigmaClassEntry {
                q,
                p,
                omega_area: rat(ct) / gap.clone(),
                coefficient: Int::from(rng.random_range(-3..=3i64)),
            });
            count += 1;
        }
    }

    // Augmentation classes all share the same forced area 1/gap.
    for _ in 0..rng.random_range(0..=bounds.max_entries_per_table.min(3)) {
        spec.gw_aug.push(AugClassEntry {
            omega_area: rat(1) / gap.clone(),
            coefficient: Int::from(rng.random_range(-3..=3i64)),
        });
    }

    let mut count = 0;
    'outer: for x in 0..nw {
        for p in 0..ns {
            if count >= bounds.max_entries_per_table {
                break 'outer;
            }
            let mx = spec.w_crit[x].morse_index;
            let mp = spec.sigma_crit[p].morse_index;
            if (2 * n - mp - mx) % 2 != 0 {
                continue;
            }
            let ct = (2 * n - mp - mx) / 2;
            if ct < 1 || !rng.random_bool(0.5) {
                continue;
            }
            spec.gw_plane.push(PlaneClassEntry {
                x,
                p,
                omega_area: rat(ct) / gap.clone(),
                coefficient: Int::from(rng.random_range(-3..=3i64)),
            });
            count += 1;
        }
    }
}

/// A partial matching between critical points whose Morse indices differ by
/// `step` (target minus source), with random nonzero coefficients. Squares
/// to zero because no point participates twice.
fn random_matching_differential(rng: &mut StdRng, indices: Vec<i64>, step: i64) -> IntMatrix {
    let n = indices.len();
    let mut m = IntMatrix::zeros(n, n);
    let mut used = vec![false; n];
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|t| (0..n).map(move |s| (t, s)))
        .filter(|&(t, s)| t != s && indices[t] - indices[s] == step)
        .collect();
    // Deterministic shuffle.
    for i in (1..pairs.len()).rev() {
        let j = rng.random_range(0..=i);
        pairs.swap(i, j);
    }
    for (t, s) in pairs {
        if used[t] || used[s] || !rng.random_bool(0.6) {
            continue;
        }
        used[t] = true;
        used[s] = true;
        let mut c = rng.random_range(-3..=3i64);
        if c == 0 {
            c = 1;
        }
        m.set(t, s, Int::from(c));
    }
    m
}

/// Random small integer matrix, for linear-algebra property tests.
pub fn random_int_matrix(seed: u64, rows: usize, cols: usize, max_abs: i64) -> IntMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, Int::from(rng.random_range(-max_abs..=max_abs)));
        }
    }
    m
}
