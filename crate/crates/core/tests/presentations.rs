use artin_core::graphs::parse_graph;
use artin_core::presentations::{
    abelianization, coset_enumerate, homomorphism_check, reduced_artin_presentation, sart, theorem_presentation,
    Presentation, THEOREMS,
};

#[test]
fn reduced_relators_are_trivial_modulo_translations() {
    for name in ["A2~", "A3~", "A4~", "D4~", "D5~", "E6~", "E7~", "B3~", "C2~", "G2~", "F4~"] {
        let g = parse_graph(name).unwrap();
        let s = sart(&g).unwrap();
        let p = reduced_artin_presentation(&g).unwrap();
        for (rel, ok) in homomorphism_check(&s, &p) {
            assert!(ok, "{name}: {rel}");
        }
    }
}

#[test]
fn theorem_abelianizations() {
    let mcg = abelianization(&theorem_presentation("mcg-3-1").unwrap());
    assert!(mcg.is_trivial());
    let universal = abelianization(&theorem_presentation("genus3-universal").unwrap());
    assert!(universal.is_finite());
    println!("genus3-universal abelianizes to {universal}");
}

#[test]
fn theorem_presentations_roundtrip() {
    for name in THEOREMS {
        let p = theorem_presentation(name).unwrap();
        assert_eq!(Presentation::from_text(&p.to_text(), None).unwrap(), p, "{name}");
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(Presentation::from_json(&json).unwrap(), p, "{name}");
    }
}

#[test]
fn delta_macros_in_text() {
    let g = parse_graph("A3").unwrap();
    let p = Presentation::from_text("gens: t1 t2 t3 ; rels: D(A3)^2 = 1 , t1 t2 t1 = t2 t1 t2 , t2 t3 t2 = t3 t2 t3 , t1 t3 = t3 t1 , t1^2 , t2^2 , t3^2 ;", Some(&g)).unwrap();
    assert_eq!(coset_enumerate(&p, &[], 1000).order(), Some(24));
}
