//! Algebras used throughout the test suites and the `verify-example` command.

use crate::homlie::{twist, HomTriAlgebra, TriBracket, TwistMap};
use crate::matrix::basis_vector;
use crate::scalar::Scalar;

/// The 3-dimensional 3-Lie algebra with `[e1, e2, e3] = e1`, α = id.
pub fn ex31_algebra() -> HomTriAlgebra {
    HomTriAlgebra::untwisted(ex31_bracket()).expect("consistent dims")
}

pub fn ex31_bracket() -> TriBracket {
    TriBracket::from_generators(3, &[(0, 1, 2, basis_vector(3, 0))]).expect("valid generators")
}

/// `diag(1, 2, 1/2)`, an endomorphism of the `[e1, e2, e3] = e1` algebra.
pub fn ex31_alpha_diag() -> TwistMap {
    TwistMap::diag(&[Scalar::one(), Scalar::from_int(2), Scalar::ratio(1, 2)])
}

/// The twist of [`ex31_algebra`] by `diag(1, 2, 1/2)`.
pub fn ex31_twisted() -> HomTriAlgebra {
    twist(&ex31_bracket(), &ex31_alpha_diag()).expect("diag(1, 2, 1/2) is a morphism")
}

/// The 4-dimensional 3-Lie algebra with `[e1, e2, e3] = e1`, α = id.
pub fn ex32_algebra() -> HomTriAlgebra {
    HomTriAlgebra::untwisted(ex32_bracket()).expect("consistent dims")
}

pub fn ex32_bracket() -> TriBracket {
    TriBracket::from_generators(4, &[(0, 1, 2, basis_vector(4, 0))]).expect("valid generators")
}

/// The simple 4-dimensional 3-Lie algebra `[e_i, e_j, e_k] = ε_{ijkl} e_l`.
pub fn simple_a4_algebra() -> HomTriAlgebra {
    let gens: Vec<_> = [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 3, 1), (1, 2, 3, 0)]
        .into_iter()
        .map(|(i, j, k, l)| {
            // ε_{ijkl} for increasing i<j<k and the remaining index l
            let sign = if (i, j, k) == (0, 1, 3) || (i, j, k) == (1, 2, 3) {
                -1
            } else {
                1
            };
            let mut v = basis_vector(4, l);
            v[l] = Scalar::from_int(sign);
            (i, j, k, v)
        })
        .collect();
    HomTriAlgebra::untwisted(TriBracket::from_generators(4, &gens).expect("valid generators"))
        .expect("consistent dims")
}

/// A non-diagonal endomorphism of the `[e1, e2, e3] = e1` algebra: the
/// `(e2, e3)` block has determinant 1.
pub fn ex31_alpha_block() -> TwistMap {
    let s = Scalar::from_int;
    TwistMap::new(
        crate::matrix::Matrix::from_rows(vec![
            vec![s(3), s(1), s(2)],
            vec![s(0), s(2), s(1)],
            vec![s(0), s(1), s(1)],
        ])
        .expect("square"),
    )
    .expect("square")
}

/// Named multiplicative algebras used by the property suites.
pub fn multiplicative_algebras() -> Vec<(&'static str, HomTriAlgebra)> {
    vec![
        ("ex31", ex31_algebra()),
        ("ex31-diag", ex31_twisted()),
        (
            "ex31-block",
            twist(&ex31_bracket(), &ex31_alpha_block()).expect("morphism"),
        ),
        ("ex32", ex32_algebra()),
        ("a4", simple_a4_algebra()),
    ]
}
