use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::lattice::{coordinates, null_lattice, solve, span_basis};
use super::{AbelianError, FgAbelianGroup, IntMatrix};

/// A homomorphism between canonically presented groups, given by the images
/// of the source generators (columns) in target coordinates (rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl PresentedHom {
    /// Checks dimensions and well-definedness: a generator of order `d` must
    /// map to an element killed by `d`. Torsion rows are reduced.
    pub fn new(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        mut matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        let (m, n) = (source.num_generators(), target.num_generators());
        if matrix.rows() != n || matrix.cols() != m {
            return Err(AbelianError::Shape {
                expected: (n, m),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        let src_orders = source.generator_orders();
        let tgt_orders = target.generator_orders();
        for (i, t) in tgt_orders.iter().enumerate() {
            for (j, s) in src_orders.iter().enumerate() {
                let a = matrix.get(i, j).clone();
                if a.is_zero() || s.is_zero() {
                    continue;
                }
                let killed = if t.is_zero() {
                    false
                } else {
                    (s * &a).is_multiple_of(t)
                };
                if !killed {
                    return Err(AbelianError::IllDefined { generator: j });
                }
            }
            if !t.is_zero() {
                for j in 0..m {
                    let a = matrix.get(i, j).mod_floor(t);
                    matrix.set(i, j, a);
                }
            }
        }
        Ok(PresentedHom {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FgAbelianGroup, target: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(target.num_generators(), source.num_generators());
        PresentedHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        Self::scalar(group, 1)
    }

    /// Multiplication by `c` on `group`.
    pub fn scalar(group: FgAbelianGroup, c: i64) -> Self {
        let n = group.num_generators();
        let diag = vec![BigInt::from(c); n];
        Self::new(
            group.clone(),
            group,
            IntMatrix::diagonal_matrix(n, n, &diag),
        )
        .expect("scalar multiplication is always well defined")
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PresentedHom) -> Result<PresentedHom, AbelianError> {
        if self.target != next.source {
            return Err(AbelianError::Mismatch);
        }
        PresentedHom::new(
            self.source.clone(),
            next.target.clone(),
            &next.matrix * &self.matrix,
        )
    }

    /// Lattice in source coordinates mapping into the target relations;
    /// columns form a basis and contain the source relations.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let m = self.source.num_generators();
        let joined = self.matrix.hcat(&self.target.relation_matrix());
        let null = null_lattice(&joined);
        null.select_rows(&(0..m).collect::<Vec<_>>())
    }

    /// Lattice in target coordinates spanned by the image and the target
    /// relations.
    fn image_lattice(&self) -> IntMatrix {
        self.matrix.hcat(&self.target.relation_matrix())
    }

    pub fn kernel(&self) -> FgAbelianGroup {
        let basis = self.kernel_lattice();
        let coords = coordinates(&basis, &self.source.relation_matrix())
            .expect("source relations lie in the kernel of a well-defined map");
        FgAbelianGroup::cokernel_of(&coords)
    }

    pub fn cokernel(&self) -> FgAbelianGroup {
        FgAbelianGroup::cokernel_of(&self.image_lattice())
    }

    pub fn image(&self) -> FgAbelianGroup {
        let basis = span_basis(&self.image_lattice());
        let coords = coordinates(&basis, &self.target.relation_matrix())
            .expect("target relations lie in the image lattice");
        FgAbelianGroup::cokernel_of(&coords)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Applies the map to a coordinate vector, reducing the result.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.target.reduce(&mut y);
        y
    }
}

pub fn kernel(f: &PresentedHom) -> FgAbelianGroup {
    f.kernel()
}

pub fn cokernel(f: &PresentedHom) -> FgAbelianGroup {
    f.cokernel()
}

/// Whether `image(f) == kernel(g)` inside `target(f) == source(g)`.
pub fn is_exact_at(f: &PresentedHom, g: &PresentedHom) -> Result<bool, AbelianError> {
    let composite = f.then(g)?;
    if !composite.matrix.is_zero() {
        return Ok(false);
    }
    let image = f.image_lattice();
    let kernel = g.kernel_lattice();
    Ok(kernel
        .columns()
        .iter()
        .all(|v| solve(&image, v).is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    fn z2() -> FgAbelianGroup {
        FgAbelianGroup::cyclic(2)
    }

    fn hom(s: FgAbelianGroup, t: FgAbelianGroup, rows: &[&[i64]]) -> PresentedHom {
        let m = if rows.is_empty() {
            IntMatrix::zeros(t.num_generators(), s.num_generators())
        } else {
            IntMatrix::from_i64_rows(rows)
        };
        PresentedHom::new(s, t, m).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&PresentedHom::zero(z(), z())), z());
        assert_eq!(cokernel(&PresentedHom::scalar(z(), 2)), z2());
        let m = hom(FgAbelianGroup::free(2), FgAbelianGroup::free(2), &[&[2, 4], &[6, 8]]);
        assert_eq!(cokernel(&m).to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&PresentedHom::identity(z())).is_trivial());
        assert_eq!(kernel(&PresentedHom::zero(z(), z())), z());
        assert!(kernel(&PresentedHom::scalar(z(), 2)).is_trivial());
        // Z -> Z/2 reduction has kernel 2Z, again infinite cyclic.
        let red = hom(z(), z2(), &[&[1]]);
        assert_eq!(red.kernel(), z());
        assert!(red.is_surjective());
        // Z/4 -> Z/2 reduction has kernel Z/2.
        let red4 = hom(FgAbelianGroup::cyclic(4), z2(), &[&[1]]);
        assert_eq!(red4.kernel(), z2());
        assert_eq!(red4.image(), z2());
    }

    #[test]
    fn well_definedness() {
        // Z/2 -> Z sending the generator to 1 is not a homomorphism.
        assert!(matches!(
            PresentedHom::new(z2(), z(), IntMatrix::from_i64_rows(&[&[1]])),
            Err(AbelianError::IllDefined { .. })
        ));
        // Z/2 -> Z/4, 1 -> 2 is fine; 1 -> 1 is not.
        assert!(PresentedHom::new(z2(), FgAbelianGroup::cyclic(4), IntMatrix::from_i64_rows(&[&[2]])).is_ok());
        assert!(PresentedHom::new(z2(), FgAbelianGroup::cyclic(4), IntMatrix::from_i64_rows(&[&[1]])).is_err());
        assert!(matches!(
            PresentedHom::new(z(), z(), IntMatrix::zeros(2, 1)),
            Err(AbelianError::Shape { .. })
        ));
    }

    #[test]
    fn exactness_examples() {
        let zero_in = PresentedHom::zero(FgAbelianGroup::zero(), z());
        let zero_out = PresentedHom::zero(z(), FgAbelianGroup::zero());
        let id = PresentedHom::identity(z());
        assert!(is_exact_at(&zero_in, &id).unwrap());
        assert!(is_exact_at(&id, &zero_out).unwrap());

        // 0 -> Z -(x2)-> Z -> Z/2 -> 0
        let double = PresentedHom::scalar(z(), 2);
        let red = hom(z(), z2(), &[&[1]]);
        let last = PresentedHom::zero(z2(), FgAbelianGroup::zero());
        assert!(is_exact_at(&zero_in, &double).unwrap());
        assert!(is_exact_at(&double, &red).unwrap());
        assert!(is_exact_at(&red, &last).unwrap());

        // Z -(x2)-> Z -(x2)-> Z fails in the middle.
        assert!(!is_exact_at(&double, &double).unwrap());
        // Mismatched interface.
        assert!(matches!(is_exact_at(&red, &double), Err(AbelianError::Mismatch)));
    }

    #[test]
    fn image_and_counting() {
        let m = hom(FgAbelianGroup::cyclic(6), FgAbelianGroup::cyclic(4), &[&[2]]);
        assert_eq!(m.image(), z2());
        assert_eq!(m.kernel(), FgAbelianGroup::cyclic(3));
        let total = m.cokernel().order().unwrap() * m.image().order().unwrap();
        assert_eq!(Some(total), m.target().order());
    }
}
