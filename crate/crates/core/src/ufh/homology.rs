use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, FiniteGraph};

fn overflow() -> Error {
    Error::numerical("integer Smith normal form (overflow)", f64::INFINITY)
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero
/// invariant factors only, positive, each dividing the next).
pub fn smith_diagonal(mut a: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        let d = q.checked_mul(a[t][j]).ok_or_else(overflow)?;
                        a[i][j] = a[i][j].checked_sub(d).ok_or_else(overflow)?;
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        let d = q.checked_mul(row[t]).ok_or_else(overflow)?;
                        row[j] = row[j].checked_sub(d).ok_or_else(overflow)?;
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                // A remainder is smaller than the pivot: move it in and repeat.
                let (i, j) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| (i, j) != (t, t) && a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
                    .expect("dirty means a nonzero remainder");
                a.swap(t, i);
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            // Divisibility: fold a row with a non-multiple into row t.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].checked_add(a[i][j]).ok_or_else(overflow)?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub h0: usize,
    pub h1: usize,
    /// Invariant factors of ∂₁ larger than one.
    pub torsion: Vec<i64>,
    #[serde(skip)]
    pub rank: usize,
}

/// Integer incidence matrix of ∂₁ (rows: vertices, columns: edges).
pub fn boundary_matrix(g: &FiniteGraph) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; g.edge_count()]; g.vertex_count()];
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        m[t][e] += 1;
        m[s][e] -= 1;
    }
    m
}

pub fn homology_finite(g: &FiniteGraph) -> Result<Homology> {
    let diag = smith_diagonal(boundary_matrix(g))?;
    let rank = diag.len();
    Ok(Homology {
        h0: g.vertex_count() - rank,
        h1: g.edge_count() - rank,
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
        rank,
    })
}

/// Closed form used as the acceptance oracle: h0 = components and
/// h1 = |E| − |V| + components.
pub fn homology_by_components(g: &FiniteGraph) -> (usize, usize) {
    let c = components(g).count;
    (c, g.edge_count() + c - g.vertex_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> FiniteGraph {
        FiniteGraph::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn spec_examples() {
        let h = homology_finite(&g(3, &[(0, 1), (1, 2), (2, 0)])).unwrap();
        assert_eq!((h.h0, h.h1, h.torsion.len()), (1, 1, 0));
        let h = homology_finite(&g(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!((h.h0, h.h1), (1, 0));
        let h = homology_finite(&g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])).unwrap();
        assert_eq!((h.h0, h.h1), (2, 2));
    }

    #[test]
    fn smith_form_with_torsion() {
        // [[2, 4], [6, 8]] has invariant factors 2, 4.
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]).unwrap(), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]]).unwrap(), vec![1, 6]);
        assert_eq!(smith_diagonal(vec![vec![0, 0]]).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn loops_and_parallel_edges() {
        let h = homology_finite(&g(2, &[(0, 0), (0, 1), (1, 0)])).unwrap();
        assert_eq!((h.h0, h.h1), (1, 2));
        assert!(h.torsion.is_empty());
    }
}
