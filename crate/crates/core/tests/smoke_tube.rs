use stmod_core::arknit::KnitBounds;
use stmod_core::*;

#[test]
fn a2_tube_from_s1() {
    let alg = families::a_family(2, Fp::new(101).unwrap()).unwrap();
    let w = Workbench::new(alg.clone());
    let s1 = w.simple(0);
    let t0 = std::time::Instant::now();
    let tube = w
        .knit_tube(&s1, &KnitBounds { max_depth: 8, max_dim: 60, max_nodes: 80 })
        .unwrap();
    println!("knit+classify took {:?}", t0.elapsed());
    println!("rank = {}", tube.rank);
    println!("verified_depth = {}", tube.verified_depth);
    for (k, &id) in tube.quasi_simples.iter().enumerate() {
        let r = &tube.component.nodes[id].rep;
        println!("X_{} dims {:?}", k + 1, r.dims);
    }
    let coords = tube.coords_of(&w, &s1).unwrap();
    println!("coords of S1: {:?}", coords);
    // the other quasi-simple should be the string module with top S3, socle S2
    let m = strings::string_module(
        &alg,
        &strings::StringWord { letters: strings::parse_letters(&alg, "g2").unwrap(), base_vertex: 0 },
    )
    .unwrap();
    let cm = tube.coords_of(&w, &m).unwrap();
    println!("coords of M(g2): {:?}", cm);
    assert_eq!(tube.rank, 2);
    assert_eq!(coords.map(|c| c.1), Some(1));
    assert_eq!(cm.map(|c| c.1), Some(1));
    // dim vector of X_1(3) -- print for the regression constant
    let (i, _) = coords.unwrap();
    let x13 = tube.module_at(i, 3).unwrap();
    println!("X_{i}(3) dims = {:?} (total {})", x13.dims, x13.dim());
    // mesh additivity oracle: dim X_i(3) = dim middle(of seq at tau^-1 X_i(2)) - dim tau^-1 X_i(1)
    let x12 = tube.module_at(i, 2).unwrap();
    let seq = w.ar_sequence(&w.tau(&x12, -1).unwrap()).unwrap();
    let tinv_x11 = w.tau(&tube.module_at(i, 1).unwrap(), -1).unwrap();
    assert_eq!(x13.dim(), seq.middle.dim() - tinv_x11.dim());
}

#[test]
fn a2_euclidean_component_from_s2() {
    let alg = families::a_family(2, Fp::new(101).unwrap()).unwrap();
    let w = Workbench::new(alg);
    let s2 = w.simple(1);
    let t0 = std::time::Instant::now();
    let comp = w
        .knit(&[s2], &KnitBounds { max_depth: 4, max_dim: 40, max_nodes: 40 })
        .unwrap();
    println!("knit took {:?}, nodes = {}", t0.elapsed(), comp.nodes.len());
    match w.tube_info(comp) {
        Err(Error::NotQuasiSerial(msg)) => println!("NotQuasiSerial: {msg}"),
        other => panic!("expected NotQuasiSerial, got {:?}", other.map(|t| t.rank)),
    }
}

#[test]
fn kronecker_homogeneous_tube() {
    let alg = families::kronecker_trivext(Fp::new(101).unwrap()).unwrap();
    let w = Workbench::new(alg.clone());
    let b = strings::band_module(
        &alg,
        &strings::BandWord { letters: strings::parse_letters(&alg, "a1*g1~").unwrap() },
        1,
        1,
    )
    .unwrap();
    let tube = w
        .knit_tube(&b, &KnitBounds { max_depth: 6, max_dim: 40, max_nodes: 40 })
        .unwrap();
    println!("kronecker band tube rank = {}, depth = {}", tube.rank, tube.verified_depth);
    assert_eq!(tube.rank, 1);
    // tau-period 1 everywhere
    for (&id, &(_, r)) in &tube.coords {
        let rep = &tube.component.nodes[id].rep;
        let t = w.tau(rep, 1).unwrap();
        assert!(w.is_isomorphic(&t, rep).unwrap(), "tau-period 1 fails at ql {r}");
    }
}
