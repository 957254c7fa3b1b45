use catalog::families::{family_one, family_two};
use moves::run_folding_sequence;

#[test]
fn family_scripts_close_up() {
    for k in 2..=6 {
        let s = family_one(k).to_script("f1").unwrap();
        let r = run_folding_sequence(&s).unwrap_or_else(|e| panic!("k={k}: {e}"));
        let lt = polyexact::lt_polynomial(1, k as u32).unwrap();
        assert_eq!(r.real_char_poly, lt, "k={k}");
        assert!(r.perron_frobenius);
    }
    for k in 2..=4 {
        let s = family_two(k).unwrap().to_script("f2").unwrap();
        let r = run_folding_sequence(&s).unwrap_or_else(|e| panic!("k={k}: {e}"));
        println!("{k} {:?}", r.real_char_poly);
        assert!(r.reciprocal && r.perron_frobenius);
    }
}

#[test]
fn family_certificates() {
    for k in 2..=5 {
        let s = family_one(k).to_script("f1").unwrap();
        let r = run_folding_sequence(&s).unwrap();
        let c = weights::reciprocity_certificate(&r);
        println!("f1 {k} {}", serde_json::to_string(&c).unwrap());
        assert!(c.passed, "k={k}");
    }
    for k in 2..=4 {
        let s = family_two(k).unwrap().to_script("f2").unwrap();
        let r = run_folding_sequence(&s).unwrap();
        let c = weights::reciprocity_certificate(&r);
        println!("f2 {k} {}", serde_json::to_string(&c).unwrap());
        assert!(c.passed, "k={k}");
    }
}
