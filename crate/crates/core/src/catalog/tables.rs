//! Orbit data of the E6 class: one representative cluster per orbit of the
//! dihedral action, and where each of its mutations leads.

/// One orbit with a representative cluster. `mutations[k]` is the variable
/// that replaces `cluster[k]` and the orbit of the resulting seed.
#[derive(Clone, Copy, Debug)]
pub struct OrbitRow {
    pub name: &'static str,
    pub size: usize,
    pub cluster: [&'static str; 5],
    pub mutations: [(&'static str, &'static str); 5],
}

const fn row(
    name: &'static str,
    size: usize,
    cluster: [&'static str; 5],
    mutations: [(&'static str, &'static str); 5],
) -> OrbitRow {
    OrbitRow { name, size, cluster, mutations }
}

pub const E6_ORBITS: [OrbitRow; 15] = [
    row("A", 24, ["x1", "x2", "x3", "x4", "y2"], [("y4", "D"), ("z2", "B"), ("y12", "C"), ("x12", "A"), ("y3", "A")]),
    row("B", 24, ["x1", "x2", "x4", "y3", "z3"], [("x5", "B"), ("x7", "E"), ("x11", "F"), ("y12", "F"), ("x3", "A")]),
    row("C", 24, ["x1", "x2", "x4", "y12", "y2"], [("u2", "H"), ("x10", "G"), ("x12", "D"), ("x3", "A"), ("z3", "F")]),
    row("D", 24, ["x1", "x2", "x3", "y1", "y3"], [("x5", "C"), ("u1", "I"), ("x11", "C"), ("x4", "A"), ("x12", "A")]),
    row("E", 24, ["x1", "x4", "x7", "y3", "z3"], [("x5", "F"), ("y9", "K"), ("x2", "B"), ("t1", "J"), ("y5", "G")]),
    row("F", 24, ["x1", "x2", "x4", "y12", "z3"], [("y6", "L"), ("x10", "E"), ("x11", "B"), ("y3", "B"), ("y2", "C")]),
    row("G", 24, ["x1", "x4", "x7", "y3", "y5"], [("x5", "C"), ("u1", "N"), ("x3", "C"), ("z2", "E"), ("z3", "E")]),
    row("H", 12, ["x1", "x3", "y3", "y5", "u1"], [("x5", "I"), ("x7", "N"), ("y11", "M"), ("y1", "I"), ("x4", "C")]),
    row("I", 12, ["x1", "x3", "y1", "y3", "u1"], [("x5", "H"), ("x11", "H"), ("y5", "H"), ("y11", "H"), ("x2", "D")]),
    row("J", 12, ["x1", "x4", "x7", "z2", "t1"], [("x10", "J"), ("x10", "J"), ("x10", "J"), ("z3", "J"), ("y5", "E")]),
    row("K", 12, ["x1", "x7", "y5", "y11", "z2"], [("x9", "L"), ("x3", "L"), ("x10", "E"), ("x4", "E"), ("u2", "O")]),
    row("L", 12, ["x1", "x3", "y5", "y11", "z2"], [("x9", "K"), ("x7", "K"), ("x12", "F"), ("x4", "F"), ("u1", "M")]),
    row("M", 12, ["x1", "x3", "y5", "y11", "u1"], [("x9", "O"), ("x7", "O"), ("y1", "H"), ("y3", "H"), ("z2", "L")]),
    row("N", 12, ["x1", "x7", "y3", "y5", "u1"], [("x5", "H"), ("x3", "H"), ("y11", "O"), ("y9", "O"), ("x4", "G")]),
    row("O", 12, ["x1", "x7", "y5", "y11", "u1"], [("x9", "M"), ("x3", "M"), ("y9", "N"), ("y3", "N"), ("z2", "K")]),
];

/// Edges between distinct orbits in the quotient exchange graph.
pub const E6_QUOTIENT_EDGES: [(&str, &str); 24] = [
    ("J", "E"),
    ("E", "B"),
    ("B", "A"),
    ("A", "D"),
    ("D", "I"),
    ("I", "H"),
    ("H", "C"),
    ("C", "D"),
    ("A", "C"),
    ("C", "F"),
    ("F", "B"),
    ("F", "E"),
    ("G", "C"),
    ("F", "L"),
    ("L", "M"),
    ("N", "O"),
    ("O", "M"),
    ("M", "H"),
    ("H", "N"),
    ("E", "K"),
    ("K", "L"),
    ("K", "O"),
    ("G", "N"),
    ("E", "G"),
];

/// Orbits with a loop in the quotient.
pub const E6_LOOPED_ORBITS: [&str; 3] = ["A", "B", "J"];
