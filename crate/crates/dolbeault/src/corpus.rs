//! Fixture corpus of plane-curve singularities with hand-derived invariants,
//! and the seeded random curve-spec generator used by the identity fuzz
//! suites.

use crate::curve::{BranchRef, Component, CurveSpec, LineBundleSpec, SingularPoint};
use rand::Rng;

/// One local singularity fixture with its expected invariants.
///
/// Expected values derive from multiplicity sequences and pairwise contact
/// orders: e.g. the ramphoid cusp (t², t⁵) blows up through multiplicities
/// (2,2) giving delta 2, the E8 branch (t³, t⁵) through (3,2) giving 4, and
/// an ordinary m-fold point contributes m(m-1)/2 in pairwise intersections.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub equation: &'static str,
    pub multiplicity: u32,
    pub mult_prime: u32,
    pub delta: u64,
    pub branch_count: u32,
    pub conductor: Option<u64>,
}

/// At least twelve singularities: the named standard ones, reducible
/// combinations, coefficient-field stress cases, and a smooth control.
pub fn singularity_corpus() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "cusp",
            equation: "w^2 - z^3",
            multiplicity: 2,
            mult_prime: 1,
            delta: 1,
            branch_count: 1,
            conductor: Some(2),
        },
        Fixture {
            name: "node",
            equation: "w^2 - z^2 - z^3",
            multiplicity: 2,
            mult_prime: 0,
            delta: 1,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "irrational node",
            equation: "w^2 - 2*z^2 - 2*z^3",
            multiplicity: 2,
            mult_prime: 0,
            delta: 1,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "tacnode",
            equation: "w^2 - z^4",
            multiplicity: 2,
            mult_prime: 0,
            delta: 2,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "ramphoid cusp",
            equation: "w^2 - z^5",
            multiplicity: 2,
            mult_prime: 1,
            delta: 2,
            branch_count: 1,
            conductor: Some(4),
        },
        Fixture {
            name: "E6",
            equation: "w^3 - z^4",
            multiplicity: 3,
            mult_prime: 2,
            delta: 3,
            branch_count: 1,
            conductor: Some(6),
        },
        Fixture {
            name: "E8",
            equation: "w^3 - z^5",
            multiplicity: 3,
            mult_prime: 2,
            delta: 4,
            branch_count: 1,
            conductor: Some(8),
        },
        Fixture {
            name: "ordinary triple point",
            equation: "w^3 - z^3",
            multiplicity: 3,
            mult_prime: 0,
            delta: 3,
            branch_count: 3,
            conductor: None,
        },
        Fixture {
            name: "rational triple point",
            equation: "w^3 - 2*z*w^2 - z^2*w + 2*z^3",
            multiplicity: 3,
            mult_prime: 0,
            delta: 3,
            branch_count: 3,
            conductor: None,
        },
        Fixture {
            name: "A5",
            equation: "w^2 - z^6",
            multiplicity: 2,
            mult_prime: 0,
            delta: 3,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "ramphoid variant",
            equation: "w^2 - 2*z^2*w + z^4 - z^5",
            multiplicity: 2,
            mult_prime: 1,
            delta: 2,
            branch_count: 1,
            conductor: Some(4),
        },
        Fixture {
            name: "cusp with transverse line",
            equation: "w^3 - z*w^2 - z^3*w + z^4",
            multiplicity: 3,
            mult_prime: 1,
            delta: 3,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "cusp with tangent parabola",
            equation: "w^3 - z^2*w^2 - z^3*w + z^5",
            multiplicity: 3,
            mult_prime: 1,
            delta: 4,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "four conjugate lines",
            equation: "w^4 - 2*z^4",
            multiplicity: 4,
            mult_prime: 0,
            delta: 6,
            branch_count: 4,
            conductor: None,
        },
        Fixture {
            name: "two Puiseux pairs",
            equation: "w^4 - 2*z^3*w^2 - 4*z^5*w + z^6 - z^7",
            multiplicity: 4,
            mult_prime: 3,
            delta: 8,
            branch_count: 1,
            conductor: Some(16),
        },
        Fixture {
            name: "tangent ramified pair",
            equation: "w^4 - 2*z^3*w^2 + z^6 - z^7",
            multiplicity: 4,
            mult_prime: 2,
            delta: 9,
            branch_count: 2,
            conductor: None,
        },
        Fixture {
            name: "smooth control",
            equation: "w - z",
            multiplicity: 1,
            mult_prime: 0,
            delta: 0,
            branch_count: 1,
            conductor: Some(0),
        },
    ]
}

/// A random well-formed curve spec within the fuzz envelope (m ≤ 3 components
/// of genus ≤ 5, up to 4 singular points with branch multiplicities ≤ 5) and
/// a bundle with per-component degrees in [-10, 10].
pub fn random_curve_spec(rng: &mut impl Rng) -> (CurveSpec, LineBundleSpec) {
    let m = rng.gen_range(1..=3usize);
    let components: Vec<Component> = (0..m)
        .map(|i| Component {
            id: format!("c{}", i + 1),
            genus: rng.gen_range(0..=5),
        })
        .collect();
    let npoints = rng.gen_range(0..=4usize);
    let mut singular_points = Vec::new();
    for p in 0..npoints {
        let nb = rng.gen_range(1..=3usize);
        let branches: Vec<BranchRef> = (0..nb)
            .map(|_| {
                let s = if nb == 1 {
                    rng.gen_range(2..=5)
                } else {
                    rng.gen_range(1..=5)
                };
                BranchRef {
                    component: format!("c{}", rng.gen_range(1..=m)),
                    s,
                }
            })
            .collect();
        singular_points.push(SingularPoint {
            id: format!("p{}", p + 1),
            branches,
        });
    }
    let degrees = components
        .iter()
        .map(|c| (c.id.clone(), rng.gen_range(-10..=10i64)))
        .collect();
    (
        CurveSpec {
            components,
            singular_points,
            provenance: None,
        },
        LineBundleSpec { degrees },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corpus_has_at_least_twelve_singular_fixtures() {
        let n = singularity_corpus()
            .iter()
            .filter(|f| f.multiplicity >= 2 || f.branch_count >= 2)
            .count();
        assert!(n >= 12, "only {} singular fixtures", n);
    }

    #[test]
    fn corpus_expands_in_parallel() {
        // batch expansion is caller-parallelizable: branches and towers are
        // immutable and shared across threads
        let handles: Vec<_> = singularity_corpus()
            .into_iter()
            .map(|fix| {
                std::thread::spawn(move || {
                    let f = crate::puiseux::BiPoly::parse(fix.equation).unwrap();
                    let branches = crate::puiseux::puiseux_expand(&f, &Default::default()).unwrap();
                    let total: u32 = branches.iter().map(|b| b.conjugacy_count()).sum();
                    (fix.name, total, fix.branch_count)
                })
            })
            .collect();
        for h in handles {
            let (name, total, expect) = h.join().unwrap();
            assert_eq!(total, expect, "{}", name);
        }
    }

    #[test]
    fn random_specs_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (spec, bundle) = random_curve_spec(&mut rng);
            let v = validate(&spec).expect("generator must produce valid specs");
            v.bundle_degree(&bundle).unwrap();
        }
    }
}
