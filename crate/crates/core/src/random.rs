//! Seeded random instances for tests, benchmarks and `verify --random`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::{Elem, Field};
use crate::lincode::LinearCode;
use crate::matgf::Matrix;
use crate::mpcode::MpCode;

/// Shape limits for [`random_mp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub orders: Vec<u32>,
    pub max_n: usize,
    pub max_m: usize,
    pub max_blocks: usize,
}

impl Default for InstanceSpec {
    fn default() -> Self {
        InstanceSpec {
            orders: vec![2, 3, 4, 5, 8, 9],
            max_n: 8,
            max_m: 5,
            max_blocks: 5,
        }
    }
}

/// Shape of the defining matrix of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    FullRank,
    RankDeficient,
    Tall,
}

pub fn random_elem<R: Rng>(rng: &mut R, f: &Field) -> Elem {
    f.elem(rng.gen_range(0..f.order())).expect("in range")
}

pub fn random_matrix<R: Rng>(rng: &mut R, f: &Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| random_elem(rng, f)).collect();
    Matrix::from_vec(f, rows, cols, data).expect("sizes match")
}

/// Uniform among `rows × cols` matrices of full row rank (`rows ≤ cols`).
pub fn random_full_rank<R: Rng>(rng: &mut R, f: &Field, rows: usize, cols: usize) -> Matrix {
    assert!(rows <= cols, "full row rank needs rows <= cols");
    loop {
        let m = random_matrix(rng, f, rows, cols);
        if m.rank() == rows {
            return m;
        }
    }
}

pub fn random_invertible<R: Rng>(rng: &mut R, f: &Field, n: usize) -> Matrix {
    random_full_rank(rng, f, n, n)
}

/// A `rows × cols` matrix of rank exactly `rank`.
pub fn random_of_rank<R: Rng>(
    rng: &mut R,
    f: &Field,
    rows: usize,
    cols: usize,
    rank: usize,
) -> Matrix {
    assert!(rank <= rows.min(cols));
    loop {
        let left = random_matrix(rng, f, rows, rank);
        let right = random_matrix(rng, f, rank, cols);
        let m = left.matmul(&right).expect("conformable");
        if m.rank() == rank {
            return m;
        }
    }
}

/// A code spanned by `k` random vectors (dimension at most `k`).
pub fn random_code<R: Rng>(rng: &mut R, f: &Field, n: usize, k: usize) -> LinearCode {
    LinearCode::from_generator(&random_matrix(rng, f, k, n))
}

/// Another invertible completion of full-row-rank `a`: the appended rows of
/// the default completion mixed by a random invertible matrix plus random
/// multiples of the rows of `a`.
pub fn random_completion<R: Rng>(rng: &mut R, a: &Matrix) -> Matrix {
    let f = a.field();
    let b = a.complete_to_invertible().expect("full row rank");
    let (m, n) = a.shape();
    if m == n {
        return b;
    }
    let tail_rows: Vec<usize> = (m..n).collect();
    let tail = b.row_submatrix(&tail_rows).expect("rows exist");
    let mix = random_invertible(rng, f, n - m);
    let shift = random_matrix(rng, f, n - m, m);
    let new_tail = mix
        .matmul(&tail)
        .and_then(|t| t.add(&shift.matmul(a)?))
        .expect("conformable");
    a.vstack(&new_tail).expect("same width")
}

/// A constituent biased towards the structures the checkers care about.
fn random_constituent<R: Rng>(rng: &mut R, f: &Field, n: usize, ell: u32) -> LinearCode {
    let k = rng.gen_range(0..=n);
    let base = random_code(rng, f, n, k);
    match rng.gen_range(0..8) {
        0 => LinearCode::zero(f, n),
        1 => LinearCode::whole(f, n),
        // contains its own ℓ-dual
        2 | 3 => base
            .sum(&base.galois_dual(ell).expect("ell in range"))
            .expect("same shape"),
        // inside its own ℓ-dual
        4 => base
            .intersection(&base.galois_dual(ell).expect("ell in range"))
            .expect("same shape"),
        _ => base,
    }
}

/// A random MP instance together with a random Galois level.
pub fn random_mp<R: Rng>(rng: &mut R, spec: &InstanceSpec) -> (MpCode, u32) {
    let q = *spec.orders.choose(rng).expect("nonempty order list");
    let f = Field::of_order(q).expect("supported order");
    let ell = rng.gen_range(0..f.degree());
    let shape = *[Shape::FullRank, Shape::RankDeficient, Shape::Tall]
        .choose(rng)
        .unwrap();
    random_mp_shaped(rng, &f, ell, shape, spec)
}

/// `count` instances drawn from a ChaCha8 stream seeded with `seed`.
pub fn seeded_instances(seed: u64, count: usize, spec: &InstanceSpec) -> Vec<(MpCode, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_mp(&mut rng, spec)).collect()
}

pub fn random_mp_shaped<R: Rng>(
    rng: &mut R,
    f: &Field,
    ell: u32,
    shape: Shape,
    spec: &InstanceSpec,
) -> (MpCode, u32) {
    let n = rng.gen_range(1..=spec.max_n);
    let (m, nn, a) = match shape {
        Shape::FullRank => {
            let nn = rng.gen_range(1..=spec.max_blocks);
            let m = rng.gen_range(1..=nn.min(spec.max_m));
            (m, nn, random_full_rank(rng, f, m, nn))
        }
        Shape::RankDeficient => {
            let m = rng.gen_range(2..=spec.max_m.max(2));
            let nn = rng.gen_range(1..=spec.max_blocks);
            let rank = rng.gen_range(0..m.min(nn + 1));
            (m, nn, random_of_rank(rng, f, m, nn, rank))
        }
        Shape::Tall => {
            let nn = rng.gen_range(1..spec.max_m.max(2));
            let m = rng.gen_range(nn + 1..=spec.max_m.max(nn + 1));
            (m, nn, random_matrix(rng, f, m, nn))
        }
    };
    debug_assert_eq!(a.shape(), (m, nn));
    let constituents = (0..m).map(|_| random_constituent(rng, f, n, ell)).collect();
    (
        MpCode::new(constituents, a).expect("consistent shapes"),
        ell,
    )
}
