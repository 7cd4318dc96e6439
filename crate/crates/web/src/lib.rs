//! Browser bindings. Every export takes and returns plain strings so the
//! page can show results or errors verbatim.

use bufsim::format::{parse_ba, serialize_ba};
use bufsim::gen::gen_hierarchy_family;
use bufsim::sim::{two_buffer_simulates, Capacities};
use bufsim::transducer::{parse_bt, relation_inclusion_approx};
use bufsim::{BuchiAutomaton, SigmaMap};
use wasm_bindgen::prelude::*;

fn sigma_of(a: &BuchiAutomaton, b: &BuchiAutomaton) -> Result<SigmaMap, String> {
    match (a.sigma(), b.sigma()) {
        (Some(x), Some(y)) => match a.alphabet().letters().find(|&l| x.buffer(l) != y.buffer(l)) {
            Some(l) => Err(format!("sigma maps disagree on letter {}", a.alphabet().name(l))),
            None => Ok(x.clone()),
        },
        (Some(x), None) | (None, Some(x)) => Ok(x.clone()),
        (None, None) => Err("neither automaton has a `sigma` line".into()),
    }
}

/// Verdict grid for capacities `0..=max` on both buffers, one row per `k1`.
pub fn sweep(left: &str, right: &str, max: usize) -> Result<String, String> {
    let a = parse_ba(left).map_err(|e| format!("left: {e}"))?;
    let b = parse_ba(right).map_err(|e| format!("right: {e}"))?;
    let sigma = sigma_of(&a, &b)?;
    let mut out = String::from("k1\\k2");
    for k2 in 0..=max {
        out.push_str(&format!("\t{k2}"));
    }
    out.push('\n');
    for k1 in 0..=max {
        out.push_str(&k1.to_string());
        for k2 in 0..=max {
            let wins = two_buffer_simulates(&a, &b, &sigma, Capacities::new(k1, k2)).map_err(|e| e.to_string())?;
            out.push_str(if wins { "\tD" } else { "\tS" });
        }
        out.push('\n');
    }
    Ok(out)
}

/// Left and right `.ba` texts of the witness family, separated by a blank line.
pub fn hierarchy(k1: usize) -> String {
    let inst = gen_hierarchy_family(k1);
    format!("{}\n{}", serialize_ba(&inst.left), serialize_ba(&inst.right))
}

pub fn include(left: &str, right: &str, k1: usize, k2: usize) -> Result<String, String> {
    let t = parse_bt(left).map_err(|e| format!("left: {e}"))?;
    let u = parse_bt(right).map_err(|e| format!("right: {e}"))?;
    relation_inclusion_approx(&t, &u, Capacities::new(k1, k2))
        .map(|v| v.to_string())
        .map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = sweep)]
pub fn sweep_js(left: &str, right: &str, max: u32) -> Result<String, JsValue> {
    sweep(left, right, max.min(4) as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hierarchy)]
pub fn hierarchy_js(k1: u32) -> String {
    hierarchy(k1.min(6) as usize)
}

#[wasm_bindgen(js_name = include)]
pub fn include_js(left: &str, right: &str, k1: u32, k2: u32) -> Result<String, JsValue> {
    include(left, right, k1 as usize, k2 as usize).map_err(|e| JsValue::from_str(&e))
}
