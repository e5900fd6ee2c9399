//! Named input codes and fixtures used across tests, the CLI, and the README.

use std::collections::BTreeMap;

use crate::codes::{cycle_code, exponent_table, qc_lift, ClassicalCode, SimpleGraph};
use crate::gf2::BitMatrix;

/// Length-`n` repetition code with checks on consecutive pairs.
pub fn repetition(n: usize) -> ClassicalCode {
    let supports: Vec<Vec<usize>> = (0..n.saturating_sub(1)).map(|i| vec![i, i + 1]).collect();
    let h = BitMatrix::from_supports(supports.len(), n, &supports).expect("valid supports");
    ClassicalCode::new(format!("rep{n}"), h)
}

/// The [3,1,2] and [3,1,3] pair whose product is the 13-qubit example code.
pub fn small_pair() -> (ClassicalCode, ClassicalCode) {
    (
        ClassicalCode::new("c312", BitMatrix::from_strs(&["110", "001"]).unwrap()),
        ClassicalCode::new("rep3", BitMatrix::from_strs(&["110", "011"]).unwrap()),
    )
}

pub fn k33_code() -> ClassicalCode {
    let mut c = cycle_code(&SimpleGraph::complete_bipartite(3, 3), None).unwrap();
    c.name = "k33".into();
    c
}

pub fn heawood_code() -> ClassicalCode {
    let mut c = cycle_code(&SimpleGraph::heawood(), None).unwrap();
    c.name = "heawood".into();
    c
}

pub fn tutte_coxeter_code() -> ClassicalCode {
    let mut c = cycle_code(&SimpleGraph::tutte_coxeter(), None).unwrap();
    c.name = "tutte-coxeter".into();
    c
}

/// Protograph shared by the three quasi-cyclic examples.
pub fn qc_proto() -> BitMatrix {
    BitMatrix::from_strs(&["1011", "0111", "1101"]).unwrap()
}

/// Lift sizes and exponent tables of the quasi-cyclic [20,5,9], [24,6,10] and
/// [28,7,11] codes.
pub fn qc_presets() -> Vec<(&'static str, usize, Vec<Vec<Option<usize>>>)> {
    vec![
        (
            "qc20",
            5,
            vec![
                vec![Some(4), None, Some(4), Some(3)],
                vec![None, Some(3), Some(3), Some(4)],
                vec![Some(3), Some(4), None, Some(3)],
            ],
        ),
        (
            "qc24",
            6,
            vec![
                vec![Some(5), None, Some(3), Some(3)],
                vec![None, Some(4), Some(2), Some(1)],
                vec![Some(2), Some(1), None, Some(1)],
            ],
        ),
        (
            "qc28",
            7,
            vec![
                vec![Some(1), None, Some(2), Some(3)],
                vec![None, Some(5), Some(6), Some(1)],
                vec![Some(4), Some(5), None, Some(5)],
            ],
        ),
    ]
}

pub fn qc_code(name: &str) -> Option<ClassicalCode> {
    let (label, lift, table) = qc_presets().into_iter().find(|p| p.0 == name)?;
    let (proto, exps): (BitMatrix, BTreeMap<(usize, usize), usize>) = exponent_table(&table);
    let mut c = qc_lift(&proto, &exps, lift).ok()?;
    c.name = label.into();
    Some(c)
}

/// The 12×20 random-code example with its five published color classes
/// (0-based check indices).
pub fn random_example() -> (ClassicalCode, Vec<Vec<usize>>) {
    let h = BitMatrix::from_strs(&[
        "00010000110001000100",
        "00100100001100000010",
        "00000000100000011011",
        "10000001000000010010",
        "00100011000001000000",
        "01001000000111000000",
        "01010000010100001000",
        "00000001000010110001",
        "10000100101010000000",
        "00001010010000100000",
        "01011000001000000001",
        "00000100000000101100",
    ])
    .unwrap();
    let classes = vec![
        vec![3, 5, 11],
        vec![4, 6, 8],
        vec![0, 1, 7],
        vec![2, 9],
        vec![10],
    ];
    (ClassicalCode::new("random-example", h), classes)
}

/// Codes and colorings whose 3×3 product groups have sizes `a_i·b_j` with
/// `a = (5,1,1)` and `b = (1,1,1)`: the optimal schedule removes 18 check-type
/// qubits while the diagonal one removes 13.
pub fn matching_fixture() -> (ClassicalCode, ClassicalCode, Vec<usize>, Vec<usize>) {
    let h1 = BitMatrix::from_supports(
        7,
        11,
        &[
            vec![0, 1],
            vec![2, 3],
            vec![4, 5],
            vec![6, 7],
            vec![8, 9],
            vec![0, 2, 4, 6, 8],
            vec![1, 3, 5, 7, 9, 10],
        ],
    )
    .unwrap();
    let h2 = BitMatrix::from_strs(&["1101", "0111", "1011"]).unwrap();
    (
        ClassicalCode::new("fixture-a", h1),
        ClassicalCode::new("fixture-b", h2),
        vec![0, 0, 0, 0, 0, 1, 2],
        vec![0, 1, 2],
    )
}

/// Block-diagonal sum of `copies` copies of a code.
pub fn direct_sum(c: &ClassicalCode, copies: usize) -> ClassicalCode {
    let h = BitMatrix::identity(copies).kron(&c.h);
    ClassicalCode::new(format!("{}x{copies}", c.name), h)
}

/// Three copies of each code of [`small_pair`]; the product has nine logicals.
pub fn tripled_pair() -> (ClassicalCode, ClassicalCode) {
    let (a, b) = small_pair();
    (direct_sum(&a, 3), direct_sum(&b, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{min_distance, Distance};

    #[test]
    fn qc_presets_have_expected_parameters() {
        let expected = [("qc20", 20, 5, 9), ("qc24", 24, 6, 10), ("qc28", 28, 7, 11)];
        for (name, n, k, d) in expected {
            let c = qc_code(name).unwrap();
            assert_eq!((c.n(), c.k()), (n, k), "{name}");
            assert_eq!(c.m(), 3 * n / 4);
            assert!(c.is_full_rank());
            assert_eq!(min_distance(&c, None).unwrap(), Distance::Exact(d), "{name}");
            assert!(c.h.row_weights().iter().all(|&w| w == 3));
            assert!(c.h.col_weights().iter().all(|&w| w == 3 || w == 2));
        }
    }

    #[test]
    fn random_example_shape() {
        let (c, classes) = random_example();
        assert_eq!(c.h.shape(), (12, 20));
        let mut all: Vec<usize> = classes.concat();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn tripled_pair_dimensions() {
        let (a, b) = tripled_pair();
        assert_eq!((a.n(), a.k(), a.m()), (9, 3, 6));
        assert_eq!((b.n(), b.k(), b.m()), (9, 3, 6));
    }
}
