//! Browser bindings. Every export returns text or a JSON string; errors
//! surface as thrown JS errors.

use floer_core::floer::{eigen_verify, hilbert_compare, HilbertSource};
use floer_core::poly::parse_rational;
use floer_core::relations::{r_poly, xi, Sign};
use wasm_bindgen::prelude::*;

fn to_js(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

pub fn xi_text(k: i64, n: i64, alpha_coords: bool) -> Result<String, String> {
    let p = xi(k, n).map_err(|e| e.to_string())?;
    Ok(if alpha_coords { p.to_alpha() } else { p.to_omega() }.to_string())
}

pub fn relation_text(g: u32) -> String {
    r_poly(g).to_string()
}

pub fn hilbert_json(g: u32, n: usize, source: &str, max_degree: u32) -> Result<String, String> {
    let source: HilbertSource = source.parse().map_err(|e: floer_core::error::Error| e.to_string())?;
    let report = hilbert_compare(g, n, source, max_degree).map_err(|e| e.to_string())?;
    Ok(report.to_json().to_string())
}

/// Empty `theta` means the undeformed quotient.
pub fn eigen_json(g: u32, sign: &str, theta: &str) -> Result<String, String> {
    let sign: Sign = sign.parse().map_err(|e: floer_core::error::Error| e.to_string())?;
    let theta = match theta.trim() {
        "" => None,
        t => Some(parse_rational(t).map_err(|e| e.to_string())?),
    };
    let report = eigen_verify(g, sign, theta).map_err(|e| e.to_string())?;
    Ok(report.to_json().to_string())
}

#[wasm_bindgen(js_name = xiPoly)]
pub fn xi_poly(k: i32, n: i32, alpha_coords: bool) -> Result<String, JsError> {
    xi_text(k as i64, n as i64, alpha_coords).map_err(to_js)
}

#[wasm_bindgen(js_name = relation)]
pub fn relation(g: u32) -> String {
    relation_text(g)
}

#[wasm_bindgen(js_name = hilbert)]
pub fn hilbert(g: u32, n: u32, source: &str, max_degree: u32) -> Result<String, JsError> {
    hilbert_json(g, n as usize, source, max_degree).map_err(to_js)
}

#[wasm_bindgen(js_name = eigen)]
pub fn eigen(g: u32, sign: &str, theta: &str) -> Result<String, JsError> {
    eigen_json(g, sign, theta).map_err(to_js)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn xi_renders() {
        assert_eq!(xi_text(2, 1, true).unwrap(), "1/2*alpha^2 - 1/2*beta");
        assert!(xi_text(1, 2, false).is_err());
    }

    #[test]
    fn first_relation() {
        assert_eq!(relation_text(1), "omega + 1/2*delta - 1");
    }

    #[test]
    fn hilbert_matches_formula() {
        let v: Value = serde_json::from_str(&hilbert_json(1, 3, "ptgn", 8).unwrap()).unwrap();
        assert_eq!(v["match"], true);
        assert!(hilbert_json(1, 3, "bogus", 8).is_err());
    }

    #[test]
    fn eigen_report() {
        let v: Value = serde_json::from_str(&eigen_json(1, "plus", "").unwrap()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["tuples"].as_array().unwrap().len(), 2);
        let v: Value = serde_json::from_str(&eigen_json(1, "minus", "2").unwrap()).unwrap();
        assert_eq!(v["passed"], true);
        assert!(eigen_json(1, "plus", "1/0").is_err());
    }
}
