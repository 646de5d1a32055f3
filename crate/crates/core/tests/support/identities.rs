#![allow(dead_code)]
//! Algebraic identities and symmetries every table must satisfy.

use agree2x2::estimators::{chance_agreement, estimate_all, kappa_from_g, phi_from_g, EstimateValue, EstimatorId};
use agree2x2::table::Table2x2;

const TOL: f64 = 1e-12;

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= TOL * 1f64.max(x.abs()).max(y.abs())
}

fn same(x: EstimateValue, y: EstimateValue) -> bool {
    match (x, y) {
        (Ok(x), Ok(y)) => close(x, y),
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

pub const SYMMETRIC: [EstimatorId; 9] = [
    EstimatorId::G,
    EstimatorId::Kappa,
    EstimatorId::Pi,
    EstimatorId::Ac1,
    EstimatorId::Q,
    EstimatorId::Y,
    EstimatorId::R,
    EstimatorId::McNemarNorm,
    EstimatorId::B,
];

pub fn check_identities(t: &Table2x2) -> Result<(), String> {
    let e = estimate_all(t);
    let v = |id| e.get(id);
    let g = v(EstimatorId::G).map_err(|_| "G failed")?;

    if !close(g, 2.0 * e.p_o - 1.0) {
        return Err(format!("G != 2p_o-1 at {t:?}"));
    }
    if !same(v(EstimatorId::Gamma), Ok(g * g)) {
        return Err(format!("Gamma != G^2 at {t:?}"));
    }
    if !same(v(EstimatorId::CramerV), v(EstimatorId::R).map(f64::abs)) {
        return Err(format!("V != |r| at {t:?}"));
    }
    if let (Ok(q), Ok(or)) = (v(EstimatorId::Q), v(EstimatorId::OddsRatio)) {
        if q < 1.0 && !close(or, (1.0 + q) / (1.0 - q)) {
            return Err(format!("OR != (1+Q)/(1-Q) at {t:?}"));
        }
    }
    if let Ok(f1) = v(EstimatorId::F1) {
        if !same(v(EstimatorId::F1Adj), Ok(2.0 * f1 - 1.0)) {
            return Err(format!("F1_adj != 2F1-1 at {t:?}"));
        }
    }
    if let Ok(b) = v(EstimatorId::B) {
        if !same(v(EstimatorId::BAdj), Ok(2.0 * b - 1.0)) {
            return Err(format!("B_adj != 2B-1 at {t:?}"));
        }
    }
    let [r1, _, c1, _] = t.marginals();
    let n = t.n() as f64;
    if let Ok(r) = v(EstimatorId::R) {
        let phi = phi_from_g(g, r1 as f64 / n, c1 as f64 / n).map_err(|_| format!("phi from G failed at {t:?}"))?;
        if (phi - r).abs() > TOL {
            return Err(format!("phi from G {phi} != r {r} at {t:?}"));
        }
    }
    if let Ok(k) = v(EstimatorId::Kappa) {
        let kg = kappa_from_g(g, chance_agreement(t)).map_err(|_| format!("kappa from G failed at {t:?}"))?;
        if (kg - k).abs() > TOL {
            return Err(format!("kappa from G {kg} != kappa {k} at {t:?}"));
        }
    }

    for k in [2, 3, 7] {
        let s = estimate_all(&t.scaled(k));
        for id in EstimatorId::ALL {
            let want = match id {
                EstimatorId::Chi2 | EstimatorId::McNemarChi2 => e.get(id).map(|x| x * k as f64),
                _ => e.get(id),
            };
            if !same(s.get(id), want) {
                return Err(format!("{id} not scale invariant (k={k}) at {t:?}"));
            }
        }
    }

    let swapped = estimate_all(&t.label_swapped());
    let transposed = estimate_all(&t.transposed());
    for id in SYMMETRIC {
        if !same(swapped.get(id), e.get(id)) {
            return Err(format!("{id} changes under label swap at {t:?}"));
        }
        if !same(transposed.get(id), e.get(id)) {
            return Err(format!("{id} changes under transpose at {t:?}"));
        }
    }
    Ok(())
}
