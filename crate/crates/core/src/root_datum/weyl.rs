use std::collections::HashSet;

use super::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Default cap on explicitly enumerated finite groups.
pub const DEFAULT_GROUP_CAP: usize = 200_000;

/// Closure of `generators` under multiplication, sorted lexicographically.
pub fn group_closure(generators: &[IntMatrix], dim: usize, cap: usize) -> Result<Vec<IntMatrix>> {
    let id = IntMatrix::identity(dim);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let gens: Vec<&IntMatrix> = generators.iter().filter(|g| !g.is_identity()).collect();
    while let Some(g) = frontier.pop() {
        for s in &gens {
            let h = s.mul(&g);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::SizeBound { cap });
                }
                seen.insert(h.clone());
                frontier.push(h);
            }
        }
    }
    let mut out: Vec<IntMatrix> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The group generated by all root reflections, as matrices acting on X.
pub fn weyl_group(d: &RootDatum, cap: usize) -> Result<Vec<IntMatrix>> {
    let mut gens: Vec<IntMatrix> = (0..d.roots.len()).map(|i| d.reflection_matrix(i)).collect();
    gens.sort();
    gens.dedup();
    group_closure(&gens, d.rank, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::SimpleType;

    #[test]
    fn small_orders() {
        assert_eq!(weyl_group(&RootDatum::gl(3), 1000).unwrap().len(), 6);
        let a1a1 = RootDatum::adjoint("A_1".parse().unwrap()).direct_sum(&RootDatum::adjoint("A_1".parse().unwrap()));
        assert_eq!(weyl_group(&a1a1, 1000).unwrap().len(), 4);
        assert_eq!(weyl_group(&RootDatum::torus(2), 1000).unwrap().len(), 1);
    }

    #[test]
    fn classical_orders_up_to_rank_four() {
        for s in ["A_1", "A_2", "A_3", "A_4", "B_2", "B_3", "B_4", "C_3", "C_4", "D_4", "G_2", "F_4"] {
            let t: SimpleType = s.parse().unwrap();
            let w = weyl_group(&RootDatum::adjoint(t), 10_000).unwrap();
            assert_eq!(w.len() as u128, t.weyl_order(), "{s}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = RootDatum::adjoint("B_4".parse().unwrap());
        assert_eq!(weyl_group(&d, 100), Err(Error::SizeBound { cap: 100 }));
    }
}
