//! Small named examples used by the tests, the command line tool and the
//! checked-in fixture files.

use crate::coalg::Coalgebra;
use crate::groupoid::{linearize, FinCategory, FinGraph};
use crate::kernel::{ExactMatrix, Field};
use crate::vcat::{free_semihopf_truncated, SemiHopfCategory, TruncatedFreeSemiHopf, VCategory};
use crate::vgraph::VGraph;

/// The group algebra of `Z/k` on one object `*`; basis vector `a` is the
/// residue `a`.
pub fn cyclic_group(field: Field, k: usize) -> SemiHopfCategory {
    SemiHopfCategory::linearized(field, vec!["*".into()], vec![k], |_| 0, move |_, _, _, a, b| (a + b) % k)
        .expect("valid")
}

/// The symmetric group on three letters; permutations listed as images of
/// `0, 1, 2` in the order `id, (01), (12), (02), (012), (021)`.
pub fn symmetric_group_3(field: Field) -> SemiHopfCategory {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = move |p: [usize; 3]| perms.iter().position(|&x| x == p).expect("closed");
    SemiHopfCategory::linearized(field, vec!["*".into()], vec![6], |_| 0, move |_, _, _, a, b| {
        let (pa, pb) = (perms[a], perms[b]);
        idx([pb[pa[0]], pb[pa[1]], pb[pa[2]]])
    })
    .expect("valid")
}

/// The pair groupoid on `n` objects: one arrow between any two objects.
pub fn pair_groupoid(field: Field, n: usize) -> SemiHopfCategory {
    linearize(&FinCategory::pair_groupoid(n), field)
}

/// The monoid `{1, t}` with `t² = t`: a bialgebra with no antipode.
pub fn idempotent_monoid(field: Field) -> SemiHopfCategory {
    SemiHopfCategory::linearized(field, vec!["*".into()], vec![2], |_| 0, |_, _, _, a, b| a | b).expect("valid")
}

/// Sweedler's four-dimensional Hopf algebra over `Q`, basis `1, g, x, gx`
/// with `g² = 1`, `x² = 0`, `xg = -gx`, `Δg = g ⊗ g`, `Δx = x ⊗ 1 + g ⊗ x`.
/// Composition is the algebra product in the written order.
pub fn sweedler() -> SemiHopfCategory {
    let q = Field::Rational;
    // products e_a e_b as coefficient vectors, basis (1, g, x, gx)
    let table: [[[i64; 4]; 4]; 4] = [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        [[0, 0, 1, 0], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    ];
    let mut m = ExactMatrix::zeros(q, 4, 16);
    for a in 0..4 {
        for b in 0..4 {
            for (r, &v) in table[a][b].iter().enumerate() {
                m.set(r, a * 4 + b, q.from_i64(v));
            }
        }
    }
    let mut delta = ExactMatrix::zeros(q, 16, 4);
    let mut set = |l: usize, r: usize, col: usize| delta.set(l * 4 + r, col, q.one());
    set(0, 0, 0);
    set(1, 1, 1);
    set(2, 0, 2);
    set(1, 2, 2);
    set(3, 1, 3);
    set(0, 3, 3);
    let eps = ExactMatrix::from_i64(q, 1, 4, &[1, 1, 0, 0]);
    let graph = VGraph::new(q, vec!["*".into()], vec![4]).expect("valid");
    let cat = VCategory::new(graph, vec![m], vec![vec![q.one(), q.zero(), q.zero(), q.zero()]]).expect("valid");
    SemiHopfCategory::new(cat, vec![Coalgebra::new(delta, eps).expect("valid")]).expect("valid")
}

/// The single-vertex graph with one loop.
pub fn loop_graph() -> FinGraph {
    FinGraph::from_pairs(1, &[(0, 0)]).expect("valid")
}

/// The grouplike linearization of the free category on `g`, truncated at
/// chain length `max_len`.
pub fn free_category_on(g: &FinGraph, field: Field, max_len: usize) -> TruncatedFreeSemiHopf {
    free_semihopf_truncated(&g.grouplike_coalgebra_graph(field), max_len)
}

/// The graphs on which the free Hopf construction is compared with reduced
/// words in the free groupoid: loops, parallel edges, cycles and trees.
pub fn oracle_graphs() -> Vec<FinGraph> {
    let specs: Vec<(usize, Vec<(usize, usize)>)> = vec![
        (1, vec![]),
        (1, vec![(0, 0)]),
        (1, vec![(0, 0), (0, 0)]),
        (2, vec![(0, 1)]),
        (2, vec![(0, 1), (0, 1)]),
        (2, vec![(0, 1), (1, 0)]),
        (2, vec![(0, 0), (0, 1)]),
        (3, vec![(0, 1), (1, 2)]),
        (3, vec![(0, 1), (1, 2), (2, 0)]),
        (3, vec![(0, 1), (0, 2), (1, 2)]),
        (4, vec![(0, 1), (1, 2), (2, 3)]),
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 1)]),
        (4, vec![(0, 1), (0, 2), (0, 3), (3, 3), (2, 1)]),
    ];
    specs
        .into_iter()
        .map(|(n, pairs)| FinGraph::from_pairs(n, &pairs).expect("valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{check_antipode_properties, solve_antipode, AntipodeResult};
    use crate::vcat::check_semihopf;

    #[test]
    fn fixtures_are_valid() {
        let q = Field::Rational;
        for a in [
            cyclic_group(q, 3),
            symmetric_group_3(q),
            pair_groupoid(q, 3),
            idempotent_monoid(q),
            sweedler(),
        ] {
            assert!(check_semihopf(&a).is_ok(), "{:?}", check_semihopf(&a));
        }
    }

    #[test]
    fn sweedler_antipode_sends_x_to_minus_gx() {
        let a = sweedler();
        let AntipodeResult::Solved(s) = solve_antipode(&a).unwrap() else {
            panic!("no antipode")
        };
        let expected = ExactMatrix::from_i64(Field::Rational, 4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0]);
        assert_eq!(*s.component(0, 0), expected);
        assert!(check_antipode_properties(&a, &s).unwrap().is_ok());
    }
}
