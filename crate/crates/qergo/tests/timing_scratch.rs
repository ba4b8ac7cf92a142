use qergo::tl::jones_projection;
use qergo::mat::Mat;
use qergo::scalar::CRational;
use std::time::Instant;

#[test]
fn profile_mul() {
    let e1 = jones_projection::<CRational>(3, 6, 1).unwrap();
    let e2 = jones_projection::<CRational>(3, 6, 2).unwrap();
    let t = Instant::now();
    let z: Mat<CRational> = Mat::zeros(729, 729);
    println!("zeros:      {:?} ({})", t.elapsed(), z.rows());
    let t = Instant::now();
    for _ in 0..5 { let _p = e1.op.mul(&e2.op).unwrap(); }
    println!("5 muls:     {:?}", t.elapsed());
    let t = Instant::now();
    for _ in 0..5 { let _c = e1.op.mat().clone(); }
    println!("5 clones:   {:?}", t.elapsed());
    let t = Instant::now();
    for _ in 0..5 { let _d = e1.op.mat().max_abs_diff(e2.op.mat()); }
    println!("5 diffs:    {:?}", t.elapsed());
    let t = Instant::now();
    for _ in 0..5 { let _a = e1.op.adjoint(); }
    println!("5 adjoints: {:?}", t.elapsed());
    let t = Instant::now();
    for _ in 0..5 { let _e = jones_projection::<CRational>(3, 6, 3).unwrap(); }
    println!("5 jones:    {:?}", t.elapsed());
}
