//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes a group descriptor and a generator list and returns a
//! JSON string. The `*_json` functions are the plain Rust versions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use atomlab_core::connectivity::atoms;
use atomlab_core::group::zero_sum_bound;
use atomlab_core::verifier::PointSymmetric;
use atomlab_core::{cayley_graph, make_group, zero_sum, GeneratorSet, Relation};

/// Largest group order the page accepts.
pub const MAX_ORDER: usize = 48;

fn load(group: &str, gens: &str, reflexive: bool) -> Result<(Relation, Vec<String>), String> {
    let g = make_group(group).map_err(|e| e.to_string())?;
    if g.order() > MAX_ORDER {
        return Err(format!("group order {} exceeds the demo limit {MAX_ORDER}", g.order()));
    }
    let s = GeneratorSet::parse(&g, gens).map_err(|e| e.to_string())?;
    let rel = cayley_graph(&g, &s, reflexive).map_err(|e| e.to_string())?;
    let labels = (0..g.order()).map(|a| g.element_name(a).to_string()).collect();
    Ok((rel, labels))
}

/// Sizes of `Γ^j(e)` in the reflexive Cayley graph, with both lower bounds.
pub fn growth_json(group: &str, gens: &str) -> Result<String, String> {
    let (rel, _) = load(group, gens, true)?;
    let cert = PointSymmetric::certify(&rel).map_err(|e| e.to_string())?;
    let p = cert.profile(0).map_err(|e| e.to_string())?;
    let step: Vec<Option<usize>> = (0..=p.jmax()).map(|j| (j >= 1).then(|| p.step_bound(j))).collect();
    let cumulative: Vec<usize> = (0..=p.jmax()).map(|j| p.cumulative_bound(j)).collect();
    let holds = cert.check_all();
    let out: Value = json!({
        "n": rel.n(),
        "degree": p.degree,
        "sizes": p.sizes,
        "eligible": p.eligible,
        "step_bound": step,
        "cumulative_bound": cumulative,
        "holds": holds.holds,
    });
    Ok(out.to_string())
}

/// Connectivity and atoms of the reflexive Cayley graph.
pub fn atoms_json(group: &str, gens: &str) -> Result<String, String> {
    let (rel, labels) = load(group, gens, true)?;
    if rel.is_complete() {
        return Ok(json!({ "n": rel.n(), "kappa": rel.n() - 1, "complete": true, "atoms": [] }).to_string());
    }
    let rep = atoms(&rel).map_err(|e| e.to_string())?;
    let list: Vec<Vec<&str>> =
        rep.atoms.iter().map(|a| a.members.iter().map(|v| labels[v].as_str()).collect()).collect();
    let out = json!({
        "n": rel.n(),
        "kappa": rep.kappa,
        "complete": false,
        "atom_size": rep.atom_size,
        "atoms": list,
        "pairwise_disjoint": rep.pairwise_disjoint(),
    });
    Ok(out.to_string())
}

/// Shortest generator sequence whose product is the identity.
pub fn zero_sum_json(group: &str, gens: &str) -> Result<String, String> {
    let g = make_group(group).map_err(|e| e.to_string())?;
    let s = GeneratorSet::parse(&g, gens).map_err(|e| e.to_string())?;
    let w = zero_sum(&g, &s);
    let seq: Vec<&str> = w.sequence.iter().map(|&x| g.element_name(x)).collect();
    let out = json!({
        "group": g.name(),
        "order": g.order(),
        "sequence": seq,
        "k": w.k,
        "bound": zero_sum_bound(&g, &s),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn growth(group: &str, gens: &str) -> Result<String, JsError> {
    growth_json(group, gens).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = atoms)]
pub fn atoms_js(group: &str, gens: &str) -> Result<String, JsError> {
    atoms_json(group, gens).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = zeroSum)]
pub fn zero_sum_js(group: &str, gens: &str) -> Result<String, JsError> {
    zero_sum_json(group, gens).map_err(|e| JsError::new(&e))
}
