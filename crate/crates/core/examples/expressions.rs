//! Parsing, printing and evaluating the expression syntax used by the CLI.

use steenrod_hit::cli::{parse, Expr};

fn main() {
    for (text, nvars) in [
        ("x1^2*x2 + x3", 3),
        ("Sq(1){Q(2,1)}", 2),
        ("V(3)", 3),
        ("Word[Sq 8, Chi 4]{x1*x2}", 2),
        ("Chi(3){x1} + (x1 + x2)^2", 2),
    ] {
        let e: Expr = parse(text).unwrap();
        println!("{text:<28} canonical {e:<28} = {}", e.eval(nvars).unwrap());
    }
    for bad in ["Q(2,", "x1 + * x2", "Sq(2)[x1]", "x0"] {
        println!("{bad:<12} -> {}", parse(bad).unwrap_err());
    }
    println!(
        "x3 in 2 variables -> {}",
        parse("x3").unwrap().eval(2).unwrap_err()
    );
}
