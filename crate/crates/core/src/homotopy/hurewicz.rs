//! The Hurewicz comparison in degree one: `π₁^ab ⊗ Z/m` against
//! `H₁(X; Z/m)`, each side computed on its own.

use crate::algebra::finab::FinAb;
use crate::cohomology::chains::homology;
use crate::error::Result;
use crate::simplicial::SSet;

use super::fundamental::edge_path_presentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurewiczRow {
    pub modulus: u64,
    pub abelianization: FinAb,
    pub homology: FinAb,
}

impl HurewiczRow {
    pub fn agrees(&self) -> bool {
        self.abelianization == self.homology
    }
}

#[derive(Clone, Debug)]
pub struct HurewiczReport {
    /// `π₁^ab` of the edge-path presentation.
    pub abelianization: FinAb,
    pub rows: Vec<HurewiczRow>,
}

impl HurewiczReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(HurewiczRow::agrees)
    }
}

pub fn hurewicz_h1(x: &SSet, moduli: &[u64]) -> Result<HurewiczReport> {
    let ep = edge_path_presentation(x, 0)?;
    let ab = ep.presentation.abelianization();
    let rows = moduli
        .iter()
        .map(|&m| {
            Ok(HurewiczRow {
                modulus: m,
                abelianization: ab.tensor_cyclic(m),
                homology: homology(x, m, 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HurewiczReport {
        abelianization: ab,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{circle, rp2};

    #[test]
    fn rp2_rows() {
        let r = hurewicz_h1(&rp2(3).unwrap(), &[2, 3]).unwrap();
        assert!(r.passes());
        assert_eq!(r.rows[0].homology, FinAb::cyclic(2));
        assert!(r.rows[1].homology.is_zero());
        assert!(hurewicz_h1(&circle(2).unwrap(), &[2, 3, 4])
            .unwrap()
            .passes());
    }
}
