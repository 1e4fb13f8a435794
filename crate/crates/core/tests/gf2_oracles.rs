use orbgrand_core::gf2::{BitMatrix, BitVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Plain bool arrays, no packing.
fn naive_mat_vec(m: &[Vec<bool>], v: &[bool]) -> Vec<bool> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(false, |acc, (&a, &b)| acc ^ (a & b)))
        .collect()
}

fn naive_mat_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(false, |acc, t| acc ^ (row[t] & b[t][j])))
                .collect()
        })
        .collect()
}

fn random_table(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<bool>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random()).collect())
        .collect()
}

fn to_matrix(t: &[Vec<bool>], cols: usize) -> BitMatrix {
    BitMatrix::from_rows(cols, t.iter().map(|r| BitVector::from_bits(r)).collect()).unwrap()
}

fn to_table(m: &BitMatrix) -> Vec<Vec<bool>> {
    m.rows().map(BitVector::to_bits).collect()
}

/// Every vector in the span of `rows`, by exhaustive combination.
fn span(rows: &[Vec<bool>], cols: usize) -> std::collections::BTreeSet<Vec<bool>> {
    let mut out = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << rows.len()) {
        let mut v = vec![false; cols];
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, &b) in v.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
        out.insert(v);
    }
    out
}

#[test]
fn mat_vec_matches_bit_loop_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..10_000 {
        let rows = 1 + case % 17;
        let cols = 1 + (case * 7) % 150;
        let t = random_table(&mut rng, rows, cols);
        let v: Vec<bool> = (0..cols).map(|_| rng.random()).collect();
        let got = to_matrix(&t, cols)
            .mul_vec(&BitVector::from_bits(&v))
            .unwrap();
        assert_eq!(got.to_bits(), naive_mat_vec(&t, &v), "case {case}");
    }
}

#[test]
fn mat_mul_and_vec_mul_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..500 {
        let (r, k, c) = (1 + case % 9, 1 + case % 70, 1 + case % 130);
        let a = random_table(&mut rng, r, k);
        let b = random_table(&mut rng, k, c);
        let got = to_matrix(&a, k).mul(&to_matrix(&b, c)).unwrap();
        assert_eq!(to_table(&got), naive_mat_mul(&a, &b));
        let u: Vec<bool> = (0..k).map(|_| rng.random()).collect();
        let uv = to_matrix(&b, c).vec_mul(&BitVector::from_bits(&u)).unwrap();
        assert_eq!(uv.to_bits(), naive_mat_mul(&[u], &b)[0]);
    }
}

#[test]
fn row_reduction_preserves_row_space_and_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for case in 0..300 {
        let rows = 1 + case % 10;
        let cols = 1 + case % 12;
        let t = random_table(&mut rng, rows, cols);
        let red = to_matrix(&t, cols).row_reduce();
        let rref = to_table(&red.rref);
        let original = span(&t, cols);
        assert_eq!(span(&rref, cols), original);
        assert_eq!(original.len(), 1 << red.rank);
        // rref shape: pivots strictly increase, pivot columns are unit columns
        assert!(red.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        for (r, &pc) in red.pivot_cols.iter().enumerate() {
            for (rr, row) in rref.iter().enumerate() {
                assert_eq!(row[pc - 1], rr == r);
            }
        }
    }
}

#[test]
fn null_space_and_right_inverse_against_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    while checked < 200 {
        let cols = 2 + checked % 11;
        let rows = 1 + checked % cols;
        let t = random_table(&mut rng, rows, cols);
        let m = to_matrix(&t, cols);
        if m.rank() != rows {
            assert!(m.null_space_basis().is_err());
            assert!(m.right_inverse().is_err());
            continue;
        }
        checked += 1;
        let basis = m.null_space_basis().unwrap();
        assert_eq!(basis.num_rows(), cols - rows);
        let kernel: std::collections::BTreeSet<Vec<bool>> = (0u32..(1 << cols))
            .map(|x| (0..cols).map(|j| x >> j & 1 == 1).collect::<Vec<_>>())
            .filter(|x| naive_mat_vec(&t, x).iter().all(|b| !b))
            .collect();
        assert_eq!(span(&to_table(&basis), cols), kernel);
        let inv = m.right_inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(rows));
    }
}

fn arb_vec(len: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), len)
}

proptest! {
    #[test]
    fn mat_vec_is_linear(t in proptest::collection::vec(arb_vec(70), 1..8), a in arb_vec(70), b in arb_vec(70)) {
        let m = to_matrix(&t, 70);
        let (a, b) = (BitVector::from_bits(&a), BitVector::from_bits(&b));
        let lhs = m.mul_vec(&a.xor(&b).unwrap()).unwrap();
        let rhs = m.mul_vec(&a).unwrap().xor(&m.mul_vec(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_is_an_involution(t in proptest::collection::vec(arb_vec(33), 1..10)) {
        let m = to_matrix(&t, 33);
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn bit_string_round_trip(v in arb_vec(200)) {
        let b = BitVector::from_bits(&v);
        prop_assert_eq!(b.to_string().parse::<BitVector>().unwrap(), b.clone());
        prop_assert_eq!(b.weight(), v.iter().filter(|&&x| x).count());
    }
}
