//! Slice products, conjugates, normal functions and the splitting lemma.
use num_complex::Complex64;
use slicereg::fixtures;
use slicereg::slicefn::{conjugate, normal, prodcomp_check, slice_product, splitting_decompose};
use slicereg::{ImaginaryUnit, Quaternion, SliceFunction};

fn main() {
    let d = fixtures::POLY_DOMAIN;
    let f = SliceFunction::polynomial(vec![Quaternion::J, Quaternion::ONE], d).unwrap();
    let g = SliceFunction::polynomial(vec![Quaternion::K, Quaternion::I], d).unwrap();
    let fg = slice_product(&f, &g).unwrap();
    let x = Quaternion::new(0.2, 0.9, 0.1, -0.4);
    println!("(f*g)(x) = {}", fg.evaluate(x).unwrap());
    println!("f(x)g(x) = {}", f.evaluate(x).unwrap() * g.evaluate(x).unwrap());
    println!(
        "product composition residual {:.1e}",
        prodcomp_check(&f, &g, x).unwrap()
    );
    println!("f^c(x) = {}", conjugate(&f).evaluate(x).unwrap());
    println!("N(f)(x) = {}", normal(&f).evaluate(x).unwrap());

    // Restricted to C_J, f splits as F1 + F2 K with F1, F2 holomorphic.
    let s = splitting_decompose(&fixtures::h(), ImaginaryUnit::J, ImaginaryUnit::K).unwrap();
    let z = Complex64::new(0.5, 1.2);
    println!("h on C_j at {z}: F1 = {}, F2 = {}", s.f1(z), s.f2(z));
    println!("Cauchy-Riemann residual {:.1e}", s.cauchy_riemann_residual(z));
}
