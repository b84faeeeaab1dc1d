//! Browser bindings for the demo page. Every export takes plain values and
//! returns a JSON string; failures come back as `{"error": "..."}` so the
//! same functions can be exercised natively in tests.

use serde::Serialize;
use serde_json::json;
use simplex_core::electric::{characters, electric_cocycles, electric_rmap, nontriviality_report, ResidueColorSet};
use simplex_core::faces::{absolutely_incoming_faces, absolutely_outgoing_faces, binomial, FaceGraph, Vertex};
use simplex_core::format::{parse_rmap, write_rmap};
use simplex_core::quantum::{check_qte, tetrahedron_image, twisted_operator};
use simplex_core::relation::{check_n_simplex, check_n_simplex_composition, checked_pow};
use simplex_core::Color;
use wasm_bindgen::prelude::*;

/// Largest cube the face listing will build.
const MAX_AMBIENT: usize = 8;
/// Largest number of boundary assignments checked in the browser.
const MAX_ASSIGNMENTS: usize = 2_000_000;

type Json = Result<serde_json::Value, String>;

fn render(result: Json) -> String {
    result.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn words<'a>(faces: impl IntoIterator<Item = &'a simplex_core::faces::FaceCode>) -> Vec<String> {
    faces.into_iter().map(|f| f.to_string()).collect()
}

fn face_report(ambient: usize, arity: usize) -> Json {
    if ambient > MAX_AMBIENT {
        return Err(format!("N is limited to {MAX_AMBIENT} here"));
    }
    let incoming = absolutely_incoming_faces(ambient, arity).map_err(|e| e.to_string())?;
    let outgoing = absolutely_outgoing_faces(ambient, arity).map_err(|e| e.to_string())?;
    let graph = FaceGraph::build(ambient, arity).map_err(|e| e.to_string())?;
    let cell_order: Vec<String> = graph
        .topological_order()
        .iter()
        .filter(|&&v| matches!(v, Vertex::Cell(_))).map(|&v| graph.face(v).to_string())
        .collect();
    Ok(json!({
        "ambient": ambient,
        "arity": arity,
        "expected": binomial(ambient, arity - 1),
        "incoming": words(&incoming),
        "outgoing": words(&outgoing),
        "cells": graph.cells().len(),
        "walls": graph.walls().len(),
        "cell_order": cell_order,
    }))
}

#[derive(Serialize)]
struct Conflict {
    assignment: Vec<Color>,
    face: String,
    first_cell: String,
    second_cell: String,
    first: Color,
    second: Color,
    subcube: String,
}

fn verify_report(text: &str) -> Json {
    let r = parse_rmap(text).map_err(|e| e.to_string())?;
    let n = r.arity();
    let assignments = checked_pow(r.colors(), n * (n + 1) / 2).filter(|&a| a <= MAX_ASSIGNMENTS);
    let Some(assignments) = assignments else {
        return Err(format!("too many boundary assignments for the browser (limit {MAX_ASSIGNMENTS})"));
    };
    let check = check_n_simplex(&r).map_err(|e| e.to_string())?;
    let composition = check_n_simplex_composition(&r).map_err(|e| e.to_string())?;
    let conflict = check.counterexample.as_ref().map(|cx| Conflict {
        assignment: cx.assignment.clone(),
        face: cx.conflict.face.to_string(),
        first_cell: cx.conflict.first_cell.to_string(),
        second_cell: cx.conflict.second_cell.to_string(),
        first: cx.conflict.first,
        second: cx.conflict.second,
        subcube: cx.conflict.subcube().to_string(),
    });
    Ok(json!({
        "arity": n,
        "colors": r.colors(),
        "bijective": r.is_bijective(),
        "assignments": assignments,
        "holds": check.holds(),
        "composition_holds": composition.holds(),
        "conflict": conflict,
    }))
}

fn color_set(p: u32, k: u32, epsilon: u32) -> Result<ResidueColorSet, String> {
    let epsilon = (epsilon != 0).then_some(epsilon as u64);
    let cs = ResidueColorSet::new(p as u64, k, epsilon).map_err(|e| e.to_string())?;
    if cs.len() > 7 {
        return Err(format!("{} colors is too many for the browser demo", cs.len()));
    }
    Ok(cs)
}

fn qte_report(p: u32, k: u32, epsilon: u32, character: usize) -> Json {
    let cs = color_set(p, k, epsilon)?;
    let r = electric_rmap(&cs).map_err(|e| e.to_string())?;
    let chars = characters(&cs).map_err(|e| e.to_string())?;
    let eta = chars
        .get(character)
        .ok_or_else(|| format!("character {character} out of range, there are {}", chars.len()))?;
    let (c1, _) = electric_cocycles(&cs, &r, eta).map_err(|e| e.to_string())?;
    let verdict = nontriviality_report(&cs, &r, eta).map_err(|e| e.to_string())?.c1;
    let op = twisted_operator(&r, &c1).map_err(|e| e.to_string())?;
    let check = check_qte(&op).map_err(|e| e.to_string())?;
    // One worked basis vector: both sides' target and phase exponent.
    let a: [Color; 6] = std::array::from_fn(|i| (i % cs.len()) as Color);
    let (lhs, lhs_phase) = tetrahedron_image(&op, true, &a);
    let (rhs, rhs_phase) = tetrahedron_image(&op, false, &a);
    let show = |t: [Color; 6]| t.map(|c| cs.element(c));
    Ok(json!({
        "modulus": cs.modulus(),
        "elements": cs.elements(),
        "characters": chars.len(),
        "character": eta.to_string(),
        "c1_nontrivial": verdict.nontrivial(),
        "fixed_point_witnesses": verdict.witnesses.len(),
        "phase_modulus": c1.modulus(),
        "basis_tuples": check.checked,
        "holds": check.holds(),
        "sample": {
            "input": show(a),
            "lhs": show(lhs),
            "lhs_phase": lhs_phase,
            "rhs": show(rhs),
            "rhs_phase": rhs_phase,
        },
    }))
}

/// Absolutely incoming/outgoing (n-1)-faces of `I^N` and an order in which
/// the n-faces can be colored.
#[wasm_bindgen]
pub fn faces(ambient: usize, arity: usize) -> String {
    render(face_report(ambient, arity))
}

/// Parses an R-map file and checks the n-simplex equation both ways.
#[wasm_bindgen]
pub fn verify_rmap(text: &str) -> String {
    render(verify_report(text))
}

/// The electric R-map on `x ≡ ε mod p` in `Z/p^k`, in file format.
#[wasm_bindgen]
pub fn electric_rmap_text(p: u32, k: u32, epsilon: u32) -> String {
    match color_set(p, k, epsilon).and_then(|cs| electric_rmap(&cs).map_err(|e| e.to_string())) {
        Ok(r) => write_rmap(&r),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Twists the electric solution by `c1` for the chosen character and checks
/// the quantum tetrahedron equation on every basis vector.
#[wasm_bindgen]
pub fn twisted_qte(p: u32, k: u32, epsilon: u32, character: usize) -> String {
    render(qte_report(p, k, epsilon, character))
}
