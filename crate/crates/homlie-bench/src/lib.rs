//! Shared fixtures for the criterion benches.

use homlie::linalg::int;
use homlie::{catalog, QuadraticHomLieAlgebra};

/// The 16-dimensional running example: coadjoint extension of sl3 with one seed.
pub fn rank3_example() -> QuadraticHomLieAlgebra {
    catalog::coadjoint_extension(3, &[(1, 2, 3, int(1))]).expect("catalog example builds")
}

/// sl2 with its Killing form, summed orthogonally with the rank-3 example.
pub fn mixed_example() -> QuadraticHomLieAlgebra {
    let sl2 = catalog::sl(2).expect("sl2 builds");
    let gram = catalog::killing(&sl2);
    let lie = QuadraticHomLieAlgebra::new(sl2, gram).expect("Killing form is invariant");
    lie.direct_sum(&rank3_example())
}
