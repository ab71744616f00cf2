//! The acceptance suite: every criterion the artifact must satisfy, runnable
//! both through `dolbeault verify` and the `acceptance` integration test.
//! Each criterion reports one pass/fail line with its pinned tolerance.

use crate::cohomology::{
    check_rr_s, check_rr_w, check_serre_duality, full_table, local_table, vanishing_thresholds,
    DimValue, Extension, LocalExt, LocalGroup, Mode,
};
use crate::corpus::{random_curve_spec, singularity_corpus};
use crate::curve::{validate, LineBundleSpec};
use crate::disk::{
    bump, bump_dbar, cauchy_transform, cutoff_norm, monomial_in_l2, quadrature_membership,
    tbar_bump, tbar_bump_dbar, GridFunction, Membership, WeightedDisk,
};
use crate::exact::Algebraic;
use crate::puiseux::{
    multiplicity_branches, multiplicity_initial_form, puiseux_expand, BiPoly, ExpandOptions, Series,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub index: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(index: u32, name: &str, pass: bool, detail: String) -> Self {
        CriterionResult {
            index,
            name: name.to_string(),
            pass,
            detail,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} — {}",
            self.index,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Run the whole suite; the seed feeds the fuzz corpora.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        substitution_oracle(),
        multiplicity_chain(),
        rr_identity_fuzz(seed),
        worked_tables(),
        local_monomial_thresholds(),
        cauchy_solver(),
        cutoff_decay(),
        vanishing_consistency(seed),
        dimension_witness(),
    ]
}

/// Criterion 1: every branch of every corpus singularity satisfies
/// f(t^s, w(t)) = 0 mod t^N in exact arithmetic.
pub fn substitution_oracle() -> CriterionResult {
    let corpus = singularity_corpus();
    let singular = corpus
        .iter()
        .filter(|f| f.multiplicity >= 2 || f.branch_count >= 2)
        .count();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for fix in &corpus {
        let f = BiPoly::parse(fix.equation).unwrap();
        match puiseux_expand(&f, &ExpandOptions::default()) {
            Ok(branches) => {
                for b in &branches {
                    let tw = b.tower();
                    let z = Series::monomial(Algebraic::one(), b.ramification() as usize);
                    let residual = f.eval_series(tw, &z, b.series());
                    let ok = residual.is_known_zero()
                        && (!b.series().is_exact() || residual.is_exactly_zero());
                    if !ok {
                        failures.push(format!("{}: nonzero residual", fix.name));
                    }
                    checked += 1;
                }
            }
            Err(e) => failures.push(format!("{}: {}", fix.name, e)),
        }
    }
    CriterionResult::new(
        1,
        "puiseux substitution oracle",
        failures.is_empty() && singular >= 12,
        if failures.is_empty() {
            format!(
                "{} branches over {} fixtures ({} singular) vanish identically",
                checked,
                corpus.len(),
                singular
            )
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 2: multiplicity from the initial form equals the branch sum on
/// the whole corpus, exactly.
pub fn multiplicity_chain() -> CriterionResult {
    let mut failures = Vec::new();
    let corpus = singularity_corpus();
    for fix in &corpus {
        let f = BiPoly::parse(fix.equation).unwrap();
        let init = multiplicity_initial_form(&f).unwrap();
        let branches = puiseux_expand(&f, &ExpandOptions::default()).unwrap();
        let from_branches = multiplicity_branches(&branches).unwrap();
        if init != from_branches || init != fix.multiplicity {
            failures.push(format!(
                "{}: initial form {} vs branches {} vs expected {}",
                fix.name, init, from_branches, fix.multiplicity
            ));
        }
    }
    CriterionResult::new(
        2,
        "multiplicity chain",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "deg(initial form) = sum of branch multiplicities on all {} fixtures",
                corpus.len()
            )
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 3: Riemann-Roch identities and Serre duality on 200 seeded
/// random curve specs in generic mode.
pub fn rr_identity_fuzz(seed: u64) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for _ in 0..200 {
        let (spec, bundle) = random_curve_spec(&mut rng);
        let curve = validate(&spec).unwrap();
        let table = full_table(&curve, &bundle, Mode::Generic).unwrap();
        for id in check_rr_w(&table).into_iter().chain(check_rr_s(&table)) {
            if !id.pass {
                failures += 1;
            }
        }
        for id in check_serre_duality(&curve, &bundle, Mode::Generic).unwrap() {
            if !id.pass {
                failures += 1;
            }
        }
    }
    CriterionResult::new(
        3,
        "riemann-roch identities (fuzz)",
        failures == 0,
        format!("200 random specs x 8 identities, {} failures", failures),
    )
}

/// Criterion 4: the worked tables, exact integers.
pub fn worked_tables() -> CriterionResult {
    use crate::curve::{BranchRef, Component, CurveSpec, SingularPoint};
    let cusp = validate(&CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 0,
        }],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![BranchRef {
                component: "c1".into(),
                s: 2,
            }],
        }],
        provenance: None,
    })
    .unwrap();
    let node = validate(&CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 0,
        }],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![
                BranchRef {
                    component: "c1".into(),
                    s: 1,
                },
                BranchRef {
                    component: "c1".into(),
                    s: 1,
                },
            ],
        }],
        provenance: None,
    })
    .unwrap();

    let t = full_table(&cusp, &LineBundleSpec::trivial(), Mode::Exact).unwrap();
    let expect_w = [(0, 0, 2), (0, 1, 0), (1, 0, 0), (1, 1, 1)];
    let expect_s = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 2)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (p, q, v) in expect_w {
        if t.entry(Extension::Weak, p, q) != DimValue::exact(v) {
            ok = false;
            detail.push(format!(
                "h_w^{{{},{}}} = {} expected {}",
                p,
                q,
                t.entry(Extension::Weak, p, q),
                v
            ));
        }
    }
    for (p, q, v) in expect_s {
        if t.entry(Extension::Strong, p, q) != DimValue::exact(v) {
            ok = false;
            detail.push(format!(
                "h_s^{{{},{}}} = {} expected {}",
                p,
                q,
                t.entry(Extension::Strong, p, q),
                v
            ));
        }
    }
    let tn = full_table(
        &node,
        &LineBundleSpec::from_degrees(&[("c1", 3)]),
        Mode::Exact,
    )
    .unwrap();
    if tn.entry(Extension::Weak, 0, 0) != DimValue::exact(4) {
        ok = false;
        detail.push(format!(
            "nodal cubic h_w^{{0,0}} = {}",
            tn.entry(Extension::Weak, 0, 0)
        ));
    }
    CriterionResult::new(
        4,
        "worked tables",
        ok,
        if ok {
            "cuspidal cubic h_w = (2,0;0,1), h_s = (1,0;0,2); nodal cubic deg 3 h_w^{0,0} = 4"
                .into()
        } else {
            detail.join("; ")
        },
    )
}

/// Criterion 5: quadrature membership matches the analytic rule k ≥ 1-s on
/// the 78-case grid s in 1..=6, k in -6..=6; marginal cases classified
/// marginal-divergent.
pub fn local_monomial_thresholds() -> CriterionResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for s in 1..=6i64 {
        let alpha = (s - 1) as f64;
        let disk = WeightedDisk::new(alpha);
        for k in -6..=6i64 {
            cases += 1;
            match quadrature_membership(k, alpha, &disk) {
                Ok(class) => {
                    let expect = monomial_in_l2(k, alpha);
                    if class.is_convergent() != expect {
                        failures.push(format!("(k={k}, s={s}): {class} vs analytic {expect}"));
                    }
                    if k + s == 0 && class != Membership::MarginalDivergent {
                        failures.push(format!("(k={k}, s={s}): marginal case misclassified"));
                    }
                }
                Err(e) => failures.push(format!("(k={k}, s={s}): {e}")),
            }
        }
    }
    CriterionResult::new(
        5,
        "local monomial thresholds",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{} cases agree with k + alpha > -1; marginal cases log-divergent",
                cases
            )
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 6: the Cauchy solver inverts d-bar on two analytic pairs with
/// relative L² error ≤ 1e-2 at 128², improving at 256².
pub fn cauchy_solver() -> CriterionResult {
    type Field = fn(rustfft::num_complex::Complex64) -> rustfft::num_complex::Complex64;
    let pairs: [(&str, Field, Field); 2] = [
        ("bump", bump, bump_dbar),
        ("tbar*bump", tbar_bump, tbar_bump_dbar),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, u_fn, f_fn) in pairs {
        let err_at = |n: usize| {
            let f = GridFunction::sample(n, 0.6, f_fn);
            let u0 = GridFunction::sample(n, 0.6, u_fn);
            let u = cauchy_transform(&f).unwrap();
            u.sub(&u0).unwrap().l2_norm() / u0.l2_norm()
        };
        let e128 = err_at(128);
        let e256 = err_at(256);
        if !(e128 <= 1e-2 && e256 < e128) {
            ok = false;
        }
        detail.push(format!(
            "{name}: err(128) = {e128:.2e}, err(256) = {e256:.2e}"
        ));
    }
    CriterionResult::new(6, "cauchy solver", ok, detail.join("; "))
}

/// Criterion 7: the cut-off quadrature matches 2π e^{-k} within 1% for
/// k = 1, 2, 3, strictly decreasing.
pub fn cutoff_decay() -> CriterionResult {
    let mut vals = Vec::new();
    let mut ok = true;
    let mut detail = Vec::new();
    for k in 1..=3u32 {
        match cutoff_norm(k, 4001, 0.01) {
            Ok(c) => {
                detail.push(format!(
                    "k={k}: {:.5} vs {:.5} (rel {:.2e})",
                    c.quadrature, c.analytic, c.rel_err
                ));
                vals.push(c.quadrature);
            }
            Err(e) => {
                ok = false;
                detail.push(format!("k={k}: {e}"));
            }
        }
    }
    if !vals.windows(2).all(|w| w[0] > w[1]) {
        ok = false;
        detail.push("sequence not strictly decreasing".into());
    }
    CriterionResult::new(7, "cut-off decay", ok, detail.join("; "))
}

/// Criterion 8: for every corpus spec and degrees exceeding the vanishing
/// threshold by 1..5 on each component, h_w^{0,1} = 0 exactly.
pub fn vanishing_consistency(seed: u64) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut specs = Vec::new();
    // the two worked curves plus a seeded batch
    use crate::curve::{BranchRef, Component, CurveSpec, SingularPoint};
    specs.push(CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 0,
        }],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![BranchRef {
                component: "c1".into(),
                s: 2,
            }],
        }],
        provenance: None,
    });
    for _ in 0..40 {
        specs.push(random_curve_spec(&mut rng).0);
    }
    let mut checked = 0;
    let mut failures = 0;
    for spec in &specs {
        let curve = validate(spec).unwrap();
        let thresholds = vanishing_thresholds(&curve);
        for extra in 1..=5i64 {
            let degrees = thresholds
                .iter()
                .map(|(c, t)| (c.clone(), t + extra))
                .collect();
            let bundle = LineBundleSpec { degrees };
            let table = full_table(&curve, &bundle, Mode::Exact).unwrap();
            checked += 1;
            if table.entry(Extension::Weak, 0, 1) != DimValue::exact(0) {
                failures += 1;
            }
        }
    }
    CriterionResult::new(
        8,
        "vanishing theorem consistency",
        failures == 0,
        format!(
            "{} spec/degree combinations, {} with h_w^{{0,1}} != 0",
            checked, failures
        ),
    )
}

/// Criterion 9: for each unibranch model s in 2..=6, the monomial exponents
/// gained by the weak extension over the strong one number exactly
/// mult' = s - 1.
pub fn dimension_witness() -> CriterionResult {
    let mut ok = true;
    let mut detail = Vec::new();
    for s in 2..=6u32 {
        let alpha = (s - 1) as f64;
        // weak membership: k >= 1-s (from the local table); strong: k >= 0
        let table = local_table(s);
        let weak_min = match table.entries[&(LocalExt::W, 0, 0)] {
            LocalGroup::Filtration { k_min, .. } => k_min,
            LocalGroup::Zero => unreachable!(),
        };
        let strong_min = match table.entries[&(LocalExt::SW, 0, 0)] {
            LocalGroup::Filtration { k_min, .. } => k_min,
            LocalGroup::Zero => unreachable!(),
        };
        let gained: Vec<i64> = (weak_min..strong_min).collect();
        // cross-check each gained exponent against the analytic rule
        let all_member = gained.iter().all(|&k| monomial_in_l2(k, alpha));
        let below_fails = !monomial_in_l2(weak_min - 1, alpha);
        if gained.len() as u32 != s - 1 || !all_member || !below_fails {
            ok = false;
        }
        detail.push(format!("s={}: gained {} exponents", s, gained.len()));
    }
    CriterionResult::new(
        9,
        "dimension witness",
        ok,
        format!("{} (= mult' = s-1 each)", detail.join(", ")),
    )
}
