use serde_json::Value;
use simplex_web::{electric_rmap_text, faces, twisted_qte, verify_rmap};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("exports return JSON")
}

#[test]
fn face_listing() {
    let v = parse(&faces(5, 3));
    assert_eq!(v["expected"], 10);
    assert_eq!(v["incoming"].as_array().unwrap().len(), 10);
    assert_eq!(v["incoming"][0], "000**");
    assert_eq!(v["cell_order"].as_array().unwrap().len(), v["cells"].as_u64().unwrap() as usize);
    assert!(parse(&faces(9, 3))["error"].is_string());
    assert!(parse(&faces(3, 4))["error"].is_string());
}

#[test]
fn electric_map_verifies() {
    let text = electric_rmap_text(5, 2, 2);
    assert!(text.starts_with("simplex-rmap v1\nn=3 m=5\n"));
    let v = parse(&verify_rmap(&text));
    assert_eq!(v["holds"], true);
    assert_eq!(v["composition_holds"], true);
    assert_eq!(v["assignments"], 15625);
    assert!(v["conflict"].is_null());
}

#[test]
fn broken_map_reports_conflict() {
    let mut text = String::from("simplex-rmap v1\nn=3 m=2\n");
    for i in 0..8u32 {
        let t = [i >> 2 & 1, i >> 1 & 1, i & 1];
        let image = match i {
            0 => [0, 0, 1],
            1 => [0, 0, 0],
            _ => t,
        };
        text += &format!("{} {} {} -> {} {} {}\n", t[0], t[1], t[2], image[0], image[1], image[2]);
    }
    let v = parse(&verify_rmap(&text));
    assert_eq!(v["holds"], false);
    assert_eq!(v["conflict"]["assignment"], serde_json::json!([0, 0, 0, 0, 0, 0]));
    assert_eq!(v["conflict"]["subcube"], "****");
    assert!(parse(&verify_rmap("simplex-rmap v1\nn=3 m=2\n"))["error"].is_string());
}

#[test]
fn twisted_tetrahedron() {
    let v = parse(&twisted_qte(5, 2, 2, 3));
    assert_eq!(v["holds"], true);
    assert_eq!(v["c1_nontrivial"], true);
    assert_eq!(v["fixed_point_witnesses"], 25);
    assert_eq!(v["sample"]["lhs"], v["sample"]["rhs"]);
    assert_eq!(v["sample"]["lhs_phase"], v["sample"]["rhs_phase"]);
    let trivial = parse(&twisted_qte(5, 2, 2, 0));
    assert_eq!(trivial["c1_nontrivial"], false);
    assert!(parse(&twisted_qte(5, 2, 2, 20))["error"].is_string());
    assert!(parse(&twisted_qte(4, 2, 0, 0))["error"].is_string());
}
