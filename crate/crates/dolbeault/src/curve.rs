//! Global model of a compact singular curve: normalization components with
//! genera, singular points with branch data, and line bundles by degree.
//!
//! The file format is JSON:
//! ```json
//! { "components": [{"id": "c1", "genus": 0}],
//!   "singular_points": [{"id": "p1", "branches": [{"component": "c1", "s": 2}]}],
//!   "provenance": "w^2 - z^3" }
//! ```
//! and for line bundles `{ "degrees": {"c1": 3} }`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub genus: u32,
}

/// One analytic branch at a singular point: the normalization component that
/// carries it and the branch multiplicity s ≥ 1.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BranchRef {
    pub component: String,
    pub s: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SingularPoint {
    pub id: String,
    pub branches: Vec<BranchRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveSpec {
    pub components: Vec<Component>,
    pub singular_points: Vec<SingularPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<String>,
}

/// Line bundle specified by the degrees of the pullback divisor on each
/// normalization component; missing components default to degree 0.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct LineBundleSpec {
    pub degrees: BTreeMap<String, i64>,
}

impl LineBundleSpec {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_degrees(pairs: &[(&str, i64)]) -> Self {
        LineBundleSpec {
            degrees: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    /// The inverse bundle L^{-1}.
    pub fn neg(&self) -> Self {
        LineBundleSpec {
            degrees: self.degrees.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("invalid curve spec:\n  - {}", .0.join("\n  - "))]
    Invalid(Vec<String>),
    #[error("unknown component id '{0}'")]
    UnknownComponent(String),
}

/// A validated curve with its derived quantities cached.
#[derive(Clone, Debug)]
pub struct ValidatedCurve {
    spec: CurveSpec,
    genus: u32,
    deg_z_minus_abs_z: u32,
    corrections: BTreeMap<String, u32>,
}

impl ValidatedCurve {
    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    /// Number of irreducible components m.
    pub fn m(&self) -> u32 {
        self.spec.components.len() as u32
    }

    /// Total genus g = Σ g_i over the normalization components.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// deg(Z - |Z|) = Σ_x mult'_x.
    pub fn deg_z_minus_abs_z(&self) -> u32 {
        self.deg_z_minus_abs_z
    }

    /// Per-component share of deg(Z - |Z|): the branches on that component.
    pub fn correction(&self, component: &str) -> u32 {
        self.corrections.get(component).copied().unwrap_or(0)
    }

    pub fn components(&self) -> &[Component] {
        &self.spec.components
    }

    /// Total degree of a line bundle: Σ of per-component degrees.
    pub fn bundle_degree(&self, bundle: &LineBundleSpec) -> Result<i64, CurveError> {
        let ids: BTreeSet<&str> = self.spec.components.iter().map(|c| c.id.as_str()).collect();
        for id in bundle.degrees.keys() {
            if !ids.contains(id.as_str()) {
                return Err(CurveError::UnknownComponent(id.clone()));
            }
        }
        Ok(bundle.degrees.values().sum())
    }

    pub fn bundle_degree_on(&self, bundle: &LineBundleSpec, component: &str) -> i64 {
        bundle.degrees.get(component).copied().unwrap_or(0)
    }

    /// True iff every singular point has exactly one analytic branch.
    pub fn locally_irreducible(&self) -> bool {
        self.spec
            .singular_points
            .iter()
            .all(|p| p.branches.len() == 1)
    }
}

/// Check all curve-spec invariants; on success return the curve with derived
/// quantities (m, g, deg(Z-|Z|), per-component corrections) cached.
pub fn validate(spec: &CurveSpec) -> Result<ValidatedCurve, CurveError> {
    let mut violations = Vec::new();
    if spec.components.is_empty() {
        violations.push("curve must have at least one component".to_string());
    }
    let mut ids = BTreeSet::new();
    for c in &spec.components {
        if !ids.insert(c.id.as_str()) {
            violations.push(format!("duplicate component id '{}'", c.id));
        }
    }
    let mut pids = BTreeSet::new();
    for p in &spec.singular_points {
        if !pids.insert(p.id.as_str()) {
            violations.push(format!("duplicate singular point id '{}'", p.id));
        }
        if p.branches.is_empty() {
            violations.push(format!("singular point '{}' has no branches", p.id));
            continue;
        }
        for b in &p.branches {
            if b.s < 1 {
                violations.push(format!(
                    "singular point '{}': branch multiplicity must be >= 1",
                    p.id
                ));
            }
            if !ids.contains(b.component.as_str()) {
                violations.push(format!(
                    "singular point '{}' references unknown component '{}'",
                    p.id, b.component
                ));
            }
        }
        if p.branches.len() == 1 && p.branches[0].s == 1 {
            violations.push(format!(
                "point '{}' is not singular: a single branch with s = 1 is a smooth point",
                p.id
            ));
        }
    }
    if !violations.is_empty() {
        return Err(CurveError::Invalid(violations));
    }

    let genus = spec.components.iter().map(|c| c.genus).sum();
    let mut corrections: BTreeMap<String, u32> = BTreeMap::new();
    let mut total = 0u32;
    for p in &spec.singular_points {
        for b in &p.branches {
            let e = b.s - 1;
            total += e;
            *corrections.entry(b.component.clone()).or_insert(0) += e;
        }
    }
    Ok(ValidatedCurve {
        spec: spec.clone(),
        genus,
        deg_z_minus_abs_z: total,
        corrections,
    })
}

/// deg(Z - |Z|) = Σ over singular points of mult'.
pub fn deg_z_minus_abs_z(curve: &ValidatedCurve) -> u32 {
    curve.deg_z_minus_abs_z()
}

/// Total bundle degree deg L = deg π*L.
pub fn bundle_degree(curve: &ValidatedCurve, bundle: &LineBundleSpec) -> Result<i64, CurveError> {
    curve.bundle_degree(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cuspidal_cubic_spec() -> CurveSpec {
        CurveSpec {
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
        }
    }

    #[test]
    fn cuspidal_cubic_validates() {
        let v = validate(&cuspidal_cubic_spec()).unwrap();
        assert_eq!(v.m(), 1);
        assert_eq!(v.genus(), 0);
        assert_eq!(v.deg_z_minus_abs_z(), 1);
        assert_eq!(v.correction("c1"), 1);
    }

    #[test]
    fn smooth_curve_validates() {
        let spec = CurveSpec {
            components: vec![Component {
                id: "c1".into(),
                genus: 3,
            }],
            singular_points: vec![],
            provenance: None,
        };
        let v = validate(&spec).unwrap();
        assert_eq!(v.genus(), 3);
        assert_eq!(v.deg_z_minus_abs_z(), 0);
    }

    #[test]
    fn rejects_non_singular_point() {
        let spec = CurveSpec {
            components: vec![Component {
                id: "c1".into(),
                genus: 0,
            }],
            singular_points: vec![SingularPoint {
                id: "p1".into(),
                branches: vec![BranchRef {
                    component: "c1".into(),
                    s: 1,
                }],
            }],
            provenance: None,
        };
        match validate(&spec) {
            Err(CurveError::Invalid(v)) => {
                assert!(v.iter().any(|m| m.contains("not singular")));
            }
            other => panic!("expected invalid, got {:?}", other.map(|v| v.m())),
        }
    }

    #[test]
    fn rejects_unknown_component_reference() {
        let spec = CurveSpec {
            components: vec![Component {
                id: "c1".into(),
                genus: 0,
            }],
            singular_points: vec![SingularPoint {
                id: "p1".into(),
                branches: vec![BranchRef {
                    component: "nope".into(),
                    s: 2,
                }],
            }],
            provenance: None,
        };
        assert!(matches!(validate(&spec), Err(CurveError::Invalid(_))));
    }

    #[test]
    fn bundle_degree_sums_components() {
        let spec = CurveSpec {
            components: vec![
                Component {
                    id: "c1".into(),
                    genus: 0,
                },
                Component {
                    id: "c2".into(),
                    genus: 1,
                },
            ],
            singular_points: vec![],
            provenance: None,
        };
        let v = validate(&spec).unwrap();
        assert_eq!(v.bundle_degree(&LineBundleSpec::trivial()).unwrap(), 0);
        let l = LineBundleSpec::from_degrees(&[("c1", 2), ("c2", -1)]);
        assert_eq!(v.bundle_degree(&l).unwrap(), 1);
        let bad = LineBundleSpec::from_degrees(&[("cX", 2)]);
        assert!(matches!(
            v.bundle_degree(&bad),
            Err(CurveError::UnknownComponent(_))
        ));
    }

    #[test]
    fn cusp_plus_e6_correction() {
        let spec = CurveSpec {
            components: vec![Component {
                id: "c1".into(),
                genus: 0,
            }],
            singular_points: vec![
                SingularPoint {
                    id: "p1".into(),
                    branches: vec![BranchRef {
                        component: "c1".into(),
                        s: 2,
                    }],
                },
                SingularPoint {
                    id: "p2".into(),
                    branches: vec![BranchRef {
                        component: "c1".into(),
                        s: 3,
                    }],
                },
            ],
            provenance: None,
        };
        assert_eq!(validate(&spec).unwrap().deg_z_minus_abs_z(), 3);
    }

    #[test]
    fn shared_point_splits_correction_across_components() {
        // one singular point whose branches live on different components:
        // each branch contributes s - 1 to its own component
        let spec = CurveSpec {
            components: vec![
                Component {
                    id: "c1".into(),
                    genus: 1,
                },
                Component {
                    id: "c2".into(),
                    genus: 0,
                },
            ],
            singular_points: vec![SingularPoint {
                id: "p1".into(),
                branches: vec![
                    BranchRef {
                        component: "c1".into(),
                        s: 3,
                    },
                    BranchRef {
                        component: "c2".into(),
                        s: 2,
                    },
                ],
            }],
            provenance: None,
        };
        let v = validate(&spec).unwrap();
        assert_eq!(v.deg_z_minus_abs_z(), 3);
        assert_eq!(v.correction("c1"), 2);
        assert_eq!(v.correction("c2"), 1);
        assert!(!v.locally_irreducible());
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<CurveSpec>();
        assert_send_sync::<LineBundleSpec>();
        assert_send_sync::<ValidatedCurve>();
        assert_send_sync::<crate::puiseux::PuiseuxBranch>();
        assert_send_sync::<crate::exact::Algebraic>();
        assert_send_sync::<crate::cohomology::CohomologyTable>();
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = cuspidal_cubic_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: CurveSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
    }
}
