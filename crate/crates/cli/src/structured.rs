//! Machine-readable dumps.
//!
//! Every dump is a JSON object with `prime`, `preset` and `mode` fields.
//! Coefficients are `{"monomials": [[rho_exp, tau_exp, residue], ...]}`,
//! operation words are lists of `"b"` and `["P", i]`, and Milnor monomials
//! are `{"tau": [r, ...], "xi": [[r, exp], ...]}`. Object keys are sorted and
//! term lists follow the printing order, so equal inputs give identical bytes.

use motivic_steenrod::{
    BaseScalar, ClassicalElement, CoeffRing, GammaElement, MilnorMonomial, OpElement, OpGenerator,
    OpMonomial, TensorElement,
};
use serde_json::{json, Value};

pub fn scalar(c: &BaseScalar) -> Value {
    let monomials: Vec<Value> = c
        .terms()
        .iter()
        .map(|(m, r)| json!([m.rho, m.tau, r]))
        .collect();
    json!({ "monomials": monomials })
}

pub fn word(m: &OpMonomial) -> Value {
    Value::Array(
        m.word()
            .iter()
            .map(|g| match g {
                OpGenerator::Bockstein => json!("b"),
                OpGenerator::Power(i) => json!(["P", i]),
            })
            .collect(),
    )
}

pub fn milnor(m: &MilnorMonomial) -> Value {
    let tau: Vec<u32> = m.tau_indices().collect();
    let xi: Vec<Value> = m.xi_exponents().map(|(r, e)| json!([r, e])).collect();
    json!({ "tau": tau, "xi": xi })
}

/// The common envelope around a payload object.
pub fn envelope(ring: CoeffRing, mode: &str, mut payload: Value) -> Value {
    let obj = payload.as_object_mut().expect("payload is an object");
    obj.insert("prime".into(), json!(ring.prime().value()));
    obj.insert("preset".into(), json!(ring.preset().to_string()));
    obj.insert("mode".into(), json!(mode));
    payload
}

pub fn op_terms(e: &OpElement) -> Value {
    Value::Array(
        e.sorted_terms()
            .into_iter()
            .map(|(m, c)| json!({ "coefficient": scalar(c), "word": word(m) }))
            .collect(),
    )
}

pub fn op_element(e: &OpElement) -> Value {
    envelope(e.ring(), "op", json!({ "terms": op_terms(e) }))
}

pub fn classical_terms(e: &ClassicalElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(m, c)| json!({ "coefficient": { "monomials": [[0, 0, c]] }, "word": word(m) }))
            .collect(),
    )
}

pub fn classical_element(e: &ClassicalElement) -> Value {
    envelope(
        CoeffRing::closed(e.prime()),
        "classical",
        json!({ "terms": classical_terms(e) }),
    )
}

pub fn dual_element(e: &GammaElement) -> Value {
    let terms: Vec<Value> = e
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| json!({ "coefficient": scalar(c), "monomial": milnor(m) }))
        .collect();
    envelope(e.ring(), "dual", json!({ "terms": terms }))
}

pub fn tensor_element(e: &TensorElement) -> Value {
    let terms: Vec<Value> = e
        .sorted_terms()
        .into_iter()
        .map(|(slots, c)| {
            let slots: Vec<Value> = slots.iter().map(milnor).collect();
            json!({ "coefficient": scalar(c), "slots": slots })
        })
        .collect();
    envelope(
        e.ring(),
        "dual",
        json!({ "arity": e.arity(), "terms": terms }),
    )
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
