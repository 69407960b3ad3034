//! Slice, conjugate slice and spherical derivatives.
use slicereg::calculus::{
    conj_slice_derivative, mixed_derivative_identity_residual, slice_derivative, spherical_derivative,
};
use slicereg::fixtures::{self, FINAL_J};
use slicereg::Quaternion;

fn main() {
    let x = Quaternion::new(0.4, 0.3, 0.5, -0.6);
    for (name, f) in [
        ("h", fixtures::h()),
        ("x(1-IJ)", fixtures::final_example(FINAL_J)),
        ("x^3+xk", fixtures::cubic_xk()),
    ] {
        println!("{name}");
        println!("  ∂f/∂x   = {}", slice_derivative(&f, x).unwrap());
        println!("  ∂f/∂x^c = {}", conj_slice_derivative(&f, x).unwrap());
        println!("  ∂_s f   = {}", spherical_derivative(&f, x).unwrap());
        println!(
            "  identity residual {:.1e}",
            mixed_derivative_identity_residual(&f, x).unwrap()
        );
    }
}
