/// Numerical invariants of one variety in the E_n sequence, with the
/// expected size of its mutation class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietyProfile {
    pub name: &'static str,
    pub dim: u32,
    pub coxeter: u32,
    pub gamma: [u32; 3],
    pub rank: u32,
    pub seeds: usize,
    pub variables: usize,
}

const PROFILES: [VarietyProfile; 3] = [
    VarietyProfile { name: "e4", dim: 6, coxeter: 5, gamma: [10, 5, 5], rank: 2, seeds: 5, variables: 5 },
    VarietyProfile { name: "e5", dim: 10, coxeter: 8, gamma: [16, 10, 16], rank: 3, seeds: 16, variables: 10 },
    VarietyProfile { name: "e6", dim: 16, coxeter: 12, gamma: [27, 27, 72], rank: 5, seeds: 264, variables: 32 },
];

pub fn profile(name: &str) -> Option<VarietyProfile> {
    PROFILES.iter().copied().find(|p| p.name == name)
}

/// A seed on the variety has rank `dim + 1 - h`.
pub fn rank_check(p: &VarietyProfile) -> Result<(), String> {
    let expected = (p.dim + 1).checked_sub(p.coxeter);
    if expected == Some(p.rank) {
        Ok(())
    } else {
        Err(format!(
            "{}: rank {} but dim + 1 - h = {}",
            p.name,
            p.rank,
            (p.dim + 1) as i64 - p.coxeter as i64
        ))
    }
}

/// Known facts about the mutation class of a built-in seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expectations {
    pub seeds: usize,
    pub variables: usize,
    pub edges: usize,
    /// number of variables in each label family
    pub families: &'static [(&'static str, usize)],
    /// number of seeds containing each variable of a family
    pub membership: &'static [(&'static str, usize)],
    /// orbit size and how many orbits have it, under the standard symmetry
    pub orbit_sizes: &'static [(usize, usize)],
    /// rank-2 cycle length and how many cycles have it
    pub faces: &'static [(usize, usize)],
}

const A2_TOY: Expectations = Expectations {
    seeds: 5,
    variables: 5,
    edges: 5,
    families: &[("x", 5)],
    membership: &[],
    orbit_sizes: &[],
    faces: &[(5, 1)],
};

const E4: Expectations = Expectations { faces: &[(5, 1)], ..A2_TOY };

const E5: Expectations = Expectations {
    seeds: 16,
    variables: 10,
    edges: 24,
    families: &[("x", 8), ("q", 2)],
    membership: &[],
    orbit_sizes: &[],
    faces: &[(4, 2), (5, 8)],
};

const E6: Expectations = Expectations {
    seeds: 264,
    variables: 32,
    edges: 660,
    families: &[("x", 12), ("z", 3), ("y", 12), ("t", 3), ("u", 2)],
    membership: &[("x", 60), ("y", 32), ("z", 40), ("t", 8), ("u", 36)],
    orbit_sizes: &[(12, 8), (24, 7)],
    faces: &[],
};

pub fn expectations(name: &str) -> Option<Expectations> {
    match name {
        "a2-toy" => Some(A2_TOY),
        "e4" => Some(E4),
        "e5" => Some(E5),
        "e6" => Some(E6),
        _ => None,
    }
}
