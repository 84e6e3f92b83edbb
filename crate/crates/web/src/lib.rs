//! WebAssembly bindings for the browser demo in `www/`. Each export returns
//! a JSON string; errors become JavaScript exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use lambda_invariants::wedge::{build_invariant_pair, induced_inner_product, InnerProduct};
use lambda_invariants::{ExteriorAlgebra, GroupFamily, GroupId, Notation};

#[derive(Serialize)]
struct GroupSeries {
    group: String,
    text: String,
    latex: String,
}

#[derive(Serialize)]
struct SeriesReport {
    module: String,
    n: usize,
    dim: usize,
    series: Vec<GroupSeries>,
}

/// Series of `Λ(W)^G` for every group defined in rank `n`.
pub fn series_report(module: &str, n: usize) -> Result<String, String> {
    let alg = ExteriorAlgebra::parse(module, n).map_err(|e| e.to_string())?;
    let mut series = Vec::new();
    for family in GroupFamily::ALL {
        let Ok(group) = GroupId::new(family, n) else { continue };
        let h = alg.invariant_series(family).map_err(|e| e.to_string())?;
        series.push(GroupSeries { group: group.to_string(), text: h.to_string(), latex: h.render(Notation::Latex) });
    }
    let report = SeriesReport { module: alg.spec().to_string(), n, dim: alg.dim(), series };
    Ok(serde_json::to_string(&report).expect("serializable"))
}

#[derive(Serialize)]
struct DegreeLine {
    degree: u32,
    components: Vec<(String, String)>,
}

/// `Λ^p(W)` as a sum of irreducible GL(n)-modules, degree by degree.
pub fn decomposition_report(module: &str, n: usize) -> Result<String, String> {
    let alg = ExteriorAlgebra::parse(module, n).map_err(|e| e.to_string())?;
    let lines: Vec<DegreeLine> = alg
        .decomposition()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|d| DegreeLine {
            degree: d.degree,
            components: d.components.iter().map(|(l, m)| (l.compact(), m.to_string())).collect(),
        })
        .collect();
    Ok(serde_json::to_string(&lines).expect("serializable"))
}

#[derive(Serialize)]
struct PairReport {
    basis: Vec<String>,
    v: String,
    dual: String,
    norm: String,
}

/// The SL(n)-invariant `v ∈ Λ^p(S^k C^n)` and its Hodge dual.
pub fn pair_report(n: usize, k: u32, p: usize) -> Result<String, String> {
    let pair = build_invariant_pair(n, k, p).map_err(|e| e.to_string())?;
    let norm =
        induced_inner_product(&pair.v, &pair.v, &pair.basis, InnerProduct::TensorInduced).map_err(|e| e.to_string())?;
    let report = PairReport {
        basis: pair.basis.elements().iter().map(ToString::to_string).collect(),
        v: pair.v.to_string(),
        dual: pair.dual.to_string(),
        norm: norm.to_string(),
    };
    Ok(serde_json::to_string(&report).expect("serializable"))
}

#[wasm_bindgen]
pub fn series(module: &str, n: usize) -> Result<String, JsError> {
    series_report(module, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decompose(module: &str, n: usize) -> Result<String, JsError> {
    decomposition_report(module, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = invariantPair)]
pub fn invariant_pair(n: usize, k: u32, p: usize) -> Result<String, JsError> {
    pair_report(n, k, p).map_err(|e| JsError::new(&e))
}
