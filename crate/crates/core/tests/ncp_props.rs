use proptest::prelude::*;
use teicp_core::ncp::{ncp_eval, ncp_subgradient};
use teicp_core::{NcpKind, TieSelector};

const GRID: [f64; 7] = [-2.0, -1.0, -0.1, 0.0, 0.1, 1.0, 2.0];

fn kinds() -> [NcpKind; 3] {
    [
        NcpKind::Min,
        NcpKind::FischerBurmeister,
        NcpKind::PenalizedFb { tau: 0.95 },
    ]
}

#[test]
fn ncp_characterization_on_grid() {
    for kind in kinds() {
        for a in GRID {
            for b in GRID {
                let complementary = a >= 0.0 && b >= 0.0 && a * b == 0.0;
                let v = ncp_eval(kind, a, b);
                if complementary {
                    assert_eq!(v, 0.0, "{kind:?} at ({a}, {b})");
                } else {
                    assert!(v.abs() > 1e-12, "{kind:?} at ({a}, {b}) gave {v}");
                }
            }
        }
    }
}

fn differentiable(kind: NcpKind, a: f64, b: f64) -> bool {
    match kind {
        NcpKind::Min => (a - b).abs() > 1e-3,
        NcpKind::FischerBurmeister => a.hypot(b) > 1e-3,
        NcpKind::PenalizedFb { .. } => a.hypot(b) > 1e-3 && a.abs() > 1e-3 && b.abs() > 1e-3,
    }
}

#[test]
fn subgradient_matches_finite_differences_where_smooth() {
    let sel = TieSelector::default();
    let h = 1e-6;
    let pts: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.137).collect();
    for kind in kinds() {
        for &a in &pts {
            for &b in &pts {
                if !differentiable(kind, a, b) {
                    continue;
                }
                let (ga, gb) = ncp_subgradient(kind, a, b, &sel);
                let fa = (ncp_eval(kind, a + h, b) - ncp_eval(kind, a - h, b)) / (2.0 * h);
                let fb = (ncp_eval(kind, a, b + h) - ncp_eval(kind, a, b - h)) / (2.0 * h);
                assert!((ga - fa).abs() <= 1e-6 && (gb - fb).abs() <= 1e-6, "{kind:?} ({a}, {b})");
            }
        }
    }
}

proptest! {
    #[test]
    fn fischer_burmeister_is_positively_homogeneous(
        a in -10.0f64..10.0,
        b in -10.0f64..10.0,
        s in 0.01f64..100.0,
    ) {
        let kind = NcpKind::FischerBurmeister;
        let lhs = ncp_eval(kind, s * a, s * b);
        let rhs = s * ncp_eval(kind, a, b);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs() + s * (a.abs() + b.abs())));
    }

    #[test]
    fn subgradient_stays_in_clarke_bounds(a in -5.0f64..5.0, b in -5.0f64..5.0) {
        // FB gradients lie in the disc of radius 1 centred at (1, 1)
        let (ga, gb) = ncp_subgradient(NcpKind::FischerBurmeister, a, b, &TieSelector::default());
        prop_assert!((1.0 - ga).hypot(1.0 - gb) <= 1.0 + 1e-12);
    }
}
