//! Built-in example fans, hand-computed reference complexes and a
//! generator of random smooth complete surface fans.

use rand::Rng;

use crate::arrangement::Deformation;
use crate::complex::{BoundaryMatrix, Generator, GradedFreeComplex};
use crate::error::Result;
use crate::fan::{ExactSeq, Fan};
use crate::labeling::{ClDegree, LaurentMonomial};
use crate::poly::Poly;

/// A named input: fan, optional class group basis and deformation.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub fan: Fan,
    pub basis: Option<Vec<Vec<i64>>>,
    pub epsilon: Vec<&'static str>,
    pub removed: Vec<usize>,
}

impl Example {
    pub fn deformation(&self) -> Deformation {
        if self.epsilon.is_empty() {
            Deformation::zero(self.fan.n())
        } else {
            Deformation::parse(&self.epsilon).expect("fixture deformation parses")
        }
    }
}

fn fan(m: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(m, rays.iter().map(|r| r.to_vec()).collect(), cones.iter().map(|c| c.to_vec()).collect())
        .expect("fixture fan is valid")
}

/// Blow-up of the plane at a point, rays `(1,0),(0,1),(-1,1),(0,-1)`.
pub fn blow_up_fan() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
}

/// Basis `{D2, D3}` of the class group of [`blow_up_fan`].
pub fn blow_up_basis() -> Vec<Vec<i64>> {
    vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]
}

/// Blow-up in the coordinates `(1,0),(1,1),(0,1),(-1,-1)`.
pub fn deformed_fan() -> Fan {
    fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
}

pub const DEFORMED_EPSILON: [&str; 4] = ["1/10", "0", "0", "1/10"];

/// Deformation for the chamber where ray 2 leaves every maximal cone.
pub const CHAMBER_EPSILON: [&str; 4] = ["0", "1/10", "0", "1/10"];

/// Twice iterated blow-up, rays `(1,0),(1,1),(0,1),(-1,1),(0,-1)`.
pub fn twice_blow_up_fan() -> Fan {
    fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[0, 4]])
}

pub fn projective_line() -> Fan {
    fan(1, &[&[1], &[-1]], &[&[0], &[1]])
}

pub fn projective_plane() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// All built-in examples, addressable by name.
pub fn examples() -> Vec<Example> {
    vec![
        Example { name: "blowup", fan: blow_up_fan(), basis: Some(blow_up_basis()), epsilon: vec![], removed: vec![] },
        Example { name: "deformed", fan: deformed_fan(), basis: None, epsilon: DEFORMED_EPSILON.to_vec(), removed: vec![] },
        Example { name: "chamber", fan: deformed_fan(), basis: None, epsilon: CHAMBER_EPSILON.to_vec(), removed: vec![1] },
        Example { name: "twice", fan: twice_blow_up_fan(), basis: None, epsilon: vec![], removed: vec![] },
        Example { name: "p1", fan: projective_line(), basis: None, epsilon: vec![], removed: vec![] },
        Example { name: "p2", fan: projective_plane(), basis: None, epsilon: vec![], removed: vec![] },
    ]
}

pub fn example(name: &str) -> Option<Example> {
    examples().into_iter().find(|e| e.name == name)
}

/// Build a complex from label strings per dimension and boundary matrices
/// given as rows of polynomial strings.
pub fn complex_from_strings(seq: &ExactSeq, labels: &[&[&str]], boundaries: &[&[&[&str]]]) -> Result<GradedFreeComplex> {
    let n = seq.n();
    let mut generators = Vec::new();
    for (dim, ls) in labels.iter().enumerate() {
        let mut gens = Vec::new();
        for s in ls.iter() {
            let label = LaurentMonomial::parse(s, n)?;
            gens.push(Generator { cell: None, dim, degree: label.degree(seq), label });
        }
        generators.push(gens);
    }
    let mut mats = Vec::new();
    for rows in boundaries {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|e| Poly::parse(e, n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let cols = entries.first().map_or(0, Vec::len);
        mats.push(BoundaryMatrix { rows: entries.len(), cols, entries });
    }
    Ok(GradedFreeComplex { n, b: seq.b.to_i64_rows(), generators, boundaries: mats })
}

/// Reference complex of [`blow_up_fan`].
pub fn blow_up_reference(seq: &ExactSeq) -> Result<GradedFreeComplex> {
    complex_from_strings(
        seq,
        &[&["1"], &["x1*y3", "x1*x2*y3*y4/y1", "x1*x2*y4"], &["x1*x2*y3*y4", "x1*x2*x3*y4"]],
        &[
            &[&["x3*y1 - x1*y3", "x4*y2*y3 - x2*x3*y4", "x1*x2*y4 - x4*y1*y2"]],
            &[&["x2*y4", "x4*y2"], &["y1", "x1"], &["y3", "x3"]],
        ],
    )
}

/// Reference first differential of [`deformed_fan`] at [`DEFORMED_EPSILON`],
/// rows `v4, v3, v2, v1, v0`, columns `E0..E9`.
pub const DEFORMED_D1: [[&str; 10]; 5] = [
    ["0", "0", "0", "0", "1", "-1", "0", "x3*y4", "0", "-x3*y1"],
    ["0", "1", "-y2", "0", "0", "1", "0", "0", "-x3*y1", "0"],
    ["0", "0", "0", "1", "-1", "0", "-x1*y4", "0", "0", "x1*y3"],
    ["y2", "-1", "0", "-1", "0", "0", "0", "0", "x1*y3", "0"],
    ["-x2", "0", "x2", "0", "0", "0", "x4*y1", "-x4*y3", "0", "0"],
];

/// Position of each reference row and column in our canonical first
/// differential: `ours[ROWS[i]][COLS[j]] = ROW_SIGNS[i] * COL_SIGNS[j] * reference[i][j]`.
pub const DEFORMED_ROWS: [usize; 5] = [2, 1, 4, 3, 0];
pub const DEFORMED_COLS: [usize; 10] = [5, 1, 4, 2, 3, 0, 8, 9, 6, 7];
pub const DEFORMED_ROW_SIGNS: [i64; 5] = [1; 5];
pub const DEFORMED_COL_SIGNS: [i64; 10] = [-1, 1, 1, -1, 1, 1, 1, -1, -1, -1];

/// The reference matrix moved into our canonical order with the stored
/// permutation and signs.
pub fn deformed_reference_in_our_order(n: usize) -> Result<BoundaryMatrix> {
    let reference = deformed_reference_d1(n)?;
    let mut out = BoundaryMatrix::zeros(5, 10);
    for i in 0..5 {
        for j in 0..10 {
            out.entries[DEFORMED_ROWS[i]][DEFORMED_COLS[j]] =
                reference.entries[i][j].scale(DEFORMED_ROW_SIGNS[i] * DEFORMED_COL_SIGNS[j]);
        }
    }
    Ok(out)
}

pub fn deformed_reference_d1(n: usize) -> Result<BoundaryMatrix> {
    let entries = DEFORMED_D1
        .iter()
        .map(|row| row.iter().map(|e| Poly::parse(e, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryMatrix { rows: 5, cols: 10, entries })
}

/// Reference complex of [`twice_blow_up_fan`].
pub fn twice_blow_up_reference(seq: &ExactSeq) -> Result<GradedFreeComplex> {
    complex_from_strings(
        seq,
        &[
            &["1", "x2*y5/(x5*y2)"],
            &[
                "x1*x2*y4",
                "x1*x2*y4*y5/y2",
                "x2*y5",
                "x2*x3*x4*y5",
                "x1*x2^2*x3*y5/(x5*y2)",
                "x2*x3*x4*y5/(x5*y2)",
            ],
            &["x1*x2*y4*y5", "x1*x2^2*x3*y4*y5/y2", "x1*x2^2*x3*x4*y5/(x5*y2)", "x2*x3*x4*y5"],
        ],
        &[
            &[
                &["x4*y1*y2 - x1*x2*y4", "-x4*y1*y5", "x2*y5", "x2*x3*x4*y5 - x5*y2*y3*y4", "y1*y2*y3", "y3*y4"],
                &["0", "x1*x5*y4", "-x5*y2", "0", "-x1*x2*x3", "-x3*x4"],
            ],
            &[
                &["y5", "0", "y3", "0"],
                &["y2", "x2*x3", "0", "0"],
                &["x1*y4", "0", "0", "x3*x4"],
                &["0", "y1", "0", "-1"],
                &["0", "x5*y4", "-x4", "0"],
                &["0", "0", "x1*x2", "-x5*y2"],
            ],
        ],
    )
}

/// Expected generator degrees as line-bundle twists `O(a) ⊠ O(b)` per
/// position; the generator degree is `(-a, -b)`.
pub fn twists_to_degrees(twists: &[(&[i64], &[i64])]) -> Vec<ClDegree> {
    let neg = |v: &[i64]| v.iter().map(|e| -e).collect();
    let mut out: Vec<ClDegree> = twists.iter().map(|(a, b)| ClDegree { x: neg(a), y: neg(b) }).collect();
    out.sort();
    out
}

pub fn blow_up_degrees() -> Vec<Vec<ClDegree>> {
    vec![
        twists_to_degrees(&[(&[0, 0], &[0, 0])]),
        twists_to_degrees(&[(&[0, -1], &[0, -1]), (&[-1, -1], &[-1, -1]), (&[-1, -1], &[-1, -1])]),
        twists_to_degrees(&[(&[-1, -1], &[-1, -2]), (&[-1, -2], &[-1, -1])]),
    ]
}

pub fn twice_blow_up_degrees() -> Vec<Vec<ClDegree>> {
    vec![
        twists_to_degrees(&[(&[0, 0, 0], &[0, 0, 0]), (&[1, 1, 1], &[-1, -1, -1])]),
        twists_to_degrees(&[
            (&[-1, -1, 0], &[-1, -1, 0]),
            (&[-1, -1, 0], &[-2, -2, -1]),
            (&[0, -1, 0], &[-1, -2, -1]),
            (&[-1, -2, -1], &[-1, -2, -1]),
            (&[0, 0, 0], &[-1, -1, -1]),
            (&[0, 0, 0], &[-1, -1, -1]),
        ]),
        twists_to_degrees(&[
            (&[-1, -1, 0], &[-2, -3, -1]),
            (&[-1, -2, -1], &[-2, -2, -1]),
            (&[-1, -1, 0], &[-1, -1, -1]),
            (&[-1, -2, -1], &[-1, -2, -1]),
        ]),
    ]
}

/// Binomial generators of the lattice ideal of [`deformed_fan`].
pub const DEFORMED_BINOMIALS: [&str; 3] = ["x1*x2*y4 - x4*y1*y2", "x2*x3*y4 - x4*y2*y3", "x1*y3 - x3*y1"];

/// Random smooth complete surface fan: up to `depth` stellar subdivisions
/// of a two-dimensional cone, starting from the projective plane.
pub fn random_surface_fan<R: Rng>(rng: &mut R, depth: usize) -> Fan {
    // counterclockwise ray order; cones are consecutive pairs
    let mut rays: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
    let steps = rng.gen_range(0..=depth);
    for _ in 0..steps {
        let k = rng.gen_range(0..rays.len());
        let next = (k + 1) % rays.len();
        let sum = vec![rays[k][0] + rays[next][0], rays[k][1] + rays[next][1]];
        rays.insert(k + 1, sum);
    }
    let n = rays.len();
    let cones = (0..n)
        .map(|k| {
            let mut c = vec![k, (k + 1) % n];
            c.sort_unstable();
            c
        })
        .collect();
    Fan::new(2, rays, cones).expect("stellar subdivision of a smooth fan is smooth")
}
