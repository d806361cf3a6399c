//! Steenrod squares on a few polynomials: Cartan, instability, and the
//! conjugate squares.

use steenrod_hit::steenrod::chi_trick_residue;
use steenrod_hit::{chi_sq, sq, OperatorWord, Polynomial};

fn main() {
    let x1 = Polynomial::var(3, 0).unwrap();
    let x2 = Polynomial::var(3, 1).unwrap();
    let x3 = Polynomial::var(3, 2).unwrap();
    let f = &(&x1 * &x2) * &x3.pow(3);

    println!("f = {f}");
    for i in 0..=f.degree().unwrap() as u32 + 1 {
        println!("  Sq^{i} f = {}", sq(i, &f));
    }
    println!("Sq^deg f = f^2: {}", sq(5, &f) == f.square());

    println!();
    println!("chi(Sq^k) x1 is x1^(2^(t+1)) when k = 2^t - 1, else 0:");
    for k in 0..=8 {
        println!("  chi(Sq^{k}) x1 = {}", chi_sq(k, &x1));
    }

    let w: OperatorWord = "[Sq 4, Chi 2]".parse().unwrap();
    println!();
    println!("{w} applied to x1*x2 = {}", w.apply(&(&x1 * &x2)));

    let u = &x1 * &x1;
    let r = chi_trick_residue(&u, 2, &(&x2 * &x3)).unwrap();
    println!("u*Sq^2(v) + chi(Sq^2)(u)*v for u = x1^2, v = x2*x3: {r}");
}
