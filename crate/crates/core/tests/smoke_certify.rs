use stmod_core::arknit::KnitBounds;
use stmod_core::sms::{replay, StratLadder};
use stmod_core::*;

fn tube_a2(w: &Workbench, depth: usize) -> stmod_core::tube::TubeInfo {
    let s1 = w.simple(0);
    w.knit_tube(&s1, &KnitBounds { max_depth: 2 * depth + 4, max_dim: 200, max_nodes: 200 })
        .unwrap()
}

#[test]
fn theorem1_certificate_on_a2() {
    let alg = families::a_family(2, Fp::new(101).unwrap()).unwrap();
    let w = Workbench::new(alg);
    let t0 = std::time::Instant::now();
    let tube = tube_a2(&w, 8);
    println!("tube depth {} after {:?}", tube.verified_depth, t0.elapsed());
    let set: Vec<Rep> = tube
        .quasi_simples
        .iter()
        .map(|&id| tube.component.nodes[id].rep.clone())
        .collect();
    let ladder = StratLadder::theorem1(1, tube.rank);
    let cert = w.main_strat_certify(&tube, &ladder, &set, 6).unwrap();
    println!("certified in {:?}", t0.elapsed());
    let json = serde_json::to_value(&cert).unwrap();
    replay(&json).unwrap();
    println!("replayed in {:?}", t0.elapsed());
}

#[test]
fn theorem2_certificate_on_a2() {
    let alg = families::a_family(2, Fp::new(101).unwrap()).unwrap();
    let w = Workbench::new(alg);
    let t0 = std::time::Instant::now();
    let tube = tube_a2(&w, 8);
    // S = {X_i(2)} with i the mouth index 1
    let x12 = tube.module_at(1, 2).unwrap();
    let descent = w.recover_descent(&tube, 1, &[x12.clone()]).unwrap();
    println!("descent: {:?}", descent);
    let ladder = StratLadder::theorem2(1, tube.rank, descent);
    println!("needed depth for index 7: {}", ladder.needed_depth(7));
    let cert = w.main_strat_certify(&tube, &ladder, &[x12], 6).unwrap();
    println!("certified in {:?}", t0.elapsed());
    let json = serde_json::to_value(&cert).unwrap();
    replay(&json).unwrap();
    println!("replayed in {:?}", t0.elapsed());
}

#[test]
fn dimensionformula2_on_a2() {
    let alg = families::a_family(2, Fp::new(101).unwrap()).unwrap();
    let w = Workbench::new(alg);
    let tube = tube_a2(&w, 3);
    let rep = w.verify_lemma(&tube, "dimensionformula2", Some(6)).unwrap();
    println!("verdict: {:?}, rows: {}", rep.verdict, rep.rows.len());
    assert!(rep.verdict.passed());
}
