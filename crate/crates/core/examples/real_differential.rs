//! The real 4x4 differential, its SVD rank and the rank class.
use slicereg::differential::{rank_classify, real_differential};
use slicereg::fixtures;
use slicereg::Quaternion;

fn main() {
    let h = fixtures::h();
    let points = [
        ("generic", Quaternion::new(0.3, 0.4, 0.5, 0.2)),
        ("on C_-i^+", Quaternion::new(0.3, -0.8, 0.0, 0.0)),
        ("on S_h", -Quaternion::J),
    ];
    for (label, x) in points {
        let df = real_differential(&h, x).unwrap();
        println!(
            "h at {x} ({label}): SVD rank {}, class {:?}",
            df.rank,
            rank_classify(&h, x).unwrap()
        );
    }
    // x² is degenerate on the sphere S = i·S and singular at 0.
    let sq = fixtures::square();
    for x in [Quaternion::J, Quaternion::ZERO] {
        println!("x² at {x}: {:?}", rank_classify(&sq, x).unwrap());
    }
}
