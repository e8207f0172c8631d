//! Built-in example algebras.

use std::fmt::Write as _;

pub const EX41: &str = include_str!("../fixtures/ex41.qa");
pub const EX42: &str = include_str!("../fixtures/ex42.qa");
pub const EX43: &str = include_str!("../fixtures/ex43.qa");
pub const EX44: &str = include_str!("../fixtures/ex44.qa");
pub const A2: &str = include_str!("../fixtures/a2.qa");

pub const IDS: [&str; 5] = ["4.1", "4.2", "4.3", "4.4", "4.5"];

/// Vertices T, L, R; a loop at L and at R, `n` parallel arrows R -> L.
/// The ideal `I` is generated by all but the last of them.
pub fn ex45(n: usize) -> String {
    assert!(n >= 1, "ex45 needs at least one parallel arrow");
    let mut s = String::new();
    let _ = writeln!(s, "algebra ex45_n{n} over GF(101)");
    let _ = writeln!(s, "vertices: T L R");
    let _ = writeln!(s, "arrows:");
    let _ = writeln!(s, "  alpha: L -> L");
    let _ = writeln!(s, "  beta: R -> R");
    let _ = writeln!(s, "  eta: T -> L");
    let _ = writeln!(s, "  epsilon: R -> T");
    for i in 1..=n {
        let _ = writeln!(s, "  gamma{i}: R -> L");
    }
    let _ = writeln!(s, "relations:");
    for i in 1..=n {
        for j in i + 1..=n {
            let _ = writeln!(s, "  alpha*gamma{i}*beta - alpha*gamma{j}*beta");
        }
    }
    let _ = writeln!(s, "  alpha^3");
    let _ = writeln!(s, "  beta^6");
    let gens: Vec<String> = (1..n).map(|i| format!("gamma{i}")).collect();
    let _ = writeln!(s, "ideal I = ({})", gens.join(", "));
    s
}

/// Source text of a built-in example; `n` only matters for "4.5".
pub fn source(id: &str, n: usize) -> Option<String> {
    match id {
        "4.1" => Some(EX41.to_string()),
        "4.2" => Some(EX42.to_string()),
        "4.3" => Some(EX43.to_string()),
        "4.4" => Some(EX44.to_string()),
        "4.5" => Some(ex45(n)),
        "a2" => Some(A2.to_string()),
        _ => None,
    }
}
