//! Browser bindings for the demo page in `www/`. Each export takes plain
//! strings and numbers and returns a JSON document, or an error message.

use cwforest::{
    check_nathanson, check_skew_symmetry, check_symmetry_formula, orphan_ancestor, path_between, Rational, Tree,
    UVParams,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Rows drawn by the page are capped well below the library limit; row 8
/// already has 256 vertices.
pub const MAX_DEPTH: u32 = 8;

fn params(u: u32, v: u32) -> Result<UVParams, String> {
    UVParams::new(u.into(), v.into()).map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<Rational, String> {
    let r: Rational = s.parse().map_err(|e: cwforest::Error| e.to_string())?;
    r.require_positive().map_err(|e| e.to_string())?;
    Ok(r)
}

/// `{"u","v","root","rows":[[...],...]}` for rows `0..=depth`.
#[wasm_bindgen]
pub fn tree_rows(u: u32, v: u32, root: &str, depth: u32) -> Result<String, String> {
    if depth > MAX_DEPTH {
        return Err(format!(
            "depth {depth} is more than the page can draw (max {MAX_DEPTH})"
        ));
    }
    let p = params(u, v)?;
    let z = positive(root)?;
    let tree = Tree::new(z.clone(), p).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<Rational>> = tree.rows().take(depth as usize + 1).collect();
    Ok(json!({"u": u, "v": v, "root": z, "rows": rows}).to_string())
}

/// Ancestor chain of `value` up to its orphan, with the path back down.
#[wasm_bindgen]
pub fn ancestors(u: u32, v: u32, value: &str) -> Result<String, String> {
    let p = params(u, v)?;
    let w = positive(value)?;
    let (root, trace) = orphan_ancestor(&w, p).map_err(|e| e.to_string())?;
    let (word, exponents) = path_between(&w, &root, p).map_err(|e| e.to_string())?;
    Ok(json!({
        "u": u,
        "v": v,
        "value": w,
        "cf": trace.query_cf,
        "root": root,
        "depth": trace.depth(),
        "lines": trace.lines(),
        "steps": trace.steps,
        "word": word,
        "operator": word.operator_string(&format!("L_{u}"), &format!("R_{v}")),
        "exponents": exponents,
    })
    .to_string())
}

/// The three row-reversal identities on row `n` of the tree at `root`.
#[wasm_bindgen]
pub fn symmetry_checks(u: u32, v: u32, root: &str, n: u32) -> Result<String, String> {
    if n > MAX_DEPTH {
        return Err(format!("row {n} is more than the page can show (max {MAX_DEPTH})"));
    }
    let p = params(u, v)?;
    let z = positive(root)?;
    let n = n.into();
    let checks = [
        check_symmetry_formula(&z, p, n),
        check_skew_symmetry(&z, p, n),
        check_nathanson(&z, p, n),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&checks).expect("plain records serialize"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn rows_of_the_uv_tree() {
        let doc = parse(tree_rows(2, 3, "5/2", 2).unwrap());
        assert_eq!(doc["rows"][2], json!(["5/22", "41/12", "11/24", "17/2"]));
        assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn ancestors_of_2147_620() {
        let doc = parse(ancestors(2, 3, "2147/620").unwrap());
        assert_eq!(doc["root"], "5/2");
        assert_eq!(doc["depth"], 7);
        assert_eq!(doc["exponents"], "[1,1,2,2,1,0]");
        assert_eq!(doc["lines"][6], "5/2 = [2,2] (orphan)");
        assert_eq!(doc["operator"], "R_3 L_2 R_3^2 L_2^2 R_3");
    }

    #[test]
    fn symmetry_checks_report_all_three() {
        let doc = parse(symmetry_checks(2, 3, "5/2", 2).unwrap());
        let holds: Vec<bool> = doc
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["holds"].as_bool().unwrap())
            .collect();
        assert_eq!(holds, [false, true, true]);
        assert_eq!(doc[0]["witness"]["product"], "85/44");
    }

    #[test]
    fn bad_input_is_an_error_message() {
        assert!(tree_rows(0, 1, "1", 2).unwrap_err().contains('u'));
        assert!(tree_rows(1, 1, "1/0", 2).is_err());
        assert!(tree_rows(1, 1, "0", 2).is_err());
        assert!(tree_rows(1, 1, "1", MAX_DEPTH + 1).is_err());
        assert!(ancestors(1, 1, "abc").is_err());
    }
}
