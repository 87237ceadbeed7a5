//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes a presentation as either a catalog name or a JSON
//! document. The plain Rust functions carry the logic and return `String`
//! errors; the `#[wasm_bindgen]` wrappers only convert errors to JS values.

use std::sync::Arc;

use kmonoid::geometry::render_boxes;
use kmonoid::{catalog, Element, GroupElement, PrefixCode, Presentation};
use wasm_bindgen::prelude::*;

fn presentation(spec: &str) -> Result<Arc<Presentation>, String> {
    let spec = spec.trim();
    let p = if spec.starts_with('{') {
        Presentation::from_json(spec)
    } else {
        catalog(spec)
    };
    p.map(Presentation::into_arc).map_err(|e| e.to_string())
}

/// SVG picture of the brick partition of a code given as a JSON list of words.
pub fn code_svg(spec: &str, code: &str) -> Result<String, String> {
    let p = presentation(spec)?;
    let code = PrefixCode::from_json(&p, code).map_err(|e| e.to_string())?;
    if !code.is_maximal() {
        return Err("the code is not maximal, so its bricks leave gaps".into());
    }
    let geometry = render_boxes(&code).map_err(|e| e.to_string())?;
    geometry.to_svg().map_err(|e| e.to_string())
}

/// Normal form of a dotted word.
pub fn normal_form(spec: &str, word: &str) -> Result<String, String> {
    let p = presentation(spec)?;
    Element::parse(&p, word)
        .map(|e| e.to_string())
        .map_err(|e| e.to_string())
}

/// Image of `word` under the group element `table` (JSON pairs).
pub fn group_act(spec: &str, table: &str, word: &str) -> Result<String, String> {
    let p = presentation(spec)?;
    let g = GroupElement::from_json(&p, table).map_err(|e| e.to_string())?;
    let w = Element::parse(&p, word).map_err(|e| e.to_string())?;
    g.act(&w).map(|e| e.to_string()).map_err(|e| e.to_string())
}

/// `f∘g` (g first) as JSON pairs, reduced by synchronous alphabet reductions.
pub fn group_compose(spec: &str, f: &str, g: &str) -> Result<String, String> {
    let p = presentation(spec)?;
    let f = GroupElement::from_json(&p, f).map_err(|e| e.to_string())?;
    let g = GroupElement::from_json(&p, g).map_err(|e| e.to_string())?;
    f.compose(&g)
        .map(|h| h.simplify().to_json())
        .map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = codeSvg)]
pub fn code_svg_js(spec: &str, code: &str) -> Result<String, JsValue> {
    code_svg(spec, code).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = normalForm)]
pub fn normal_form_js(spec: &str, word: &str) -> Result<String, JsValue> {
    normal_form(spec, word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = groupAct)]
pub fn group_act_js(spec: &str, table: &str, word: &str) -> Result<String, JsValue> {
    group_act(spec, table, word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = groupCompose)]
pub fn group_compose_js(spec: &str, f: &str, g: &str) -> Result<String, JsValue> {
    group_compose(spec, f, g).map_err(|e| JsValue::from_str(&e))
}
