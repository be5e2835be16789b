//! Normalizing the ad-invariant metrics on g0 and g1 to `⟨e0, e0⟩ = 0`.

use liemetric::catalog;
use liemetric::forms::is_ad_invariant;
use liemetric::{int, rat, Field, LieAlgebra, Matrix, QuadExt, SymBilinearForm};

/// `⟨e0,e0⟩ = μ, ⟨e0,e3⟩ = 1` plus the `e1, e2` block of `g0` or `g1`.
fn metric_mu<F: Field>(g1: bool, mu: F) -> SymBilinearForm<F> {
    let one = F::one();
    let mut e = vec![(0, 0, mu), (0, 3, one.clone())];
    if g1 {
        e.push((1, 2, one));
    } else {
        e.push((1, 1, one.clone()));
        e.push((2, 2, one));
    }
    SymBilinearForm::from_entries(4, &e).unwrap()
}

fn lift(g: &LieAlgebra) -> LieAlgebra<QuadExt> {
    let n = g.dim();
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = g.c(i, j, k);
                if c != int(0) {
                    e.push((i, j, k, QuadExt::from_rational(c)));
                }
            }
        }
    }
    LieAlgebra::from_brackets(n, &e).unwrap()
}

fn basis_change<F: Field>(first: Vec<F>) -> Matrix<F> {
    let n = 4;
    Matrix::from_fn(n, n, |i, j| if j == 0 { first[i].clone() } else if i == j { F::one() } else { F::zero() })
}

#[test]
fn shifting_e0_along_the_center_normalizes_mu() {
    for (g1, g, target) in [
        (false, catalog::g0(), catalog::gmatrix0_left()),
        (true, catalog::g1(), catalog::gmatrix0_right()),
    ] {
        for mu in [rat(3, 1), rat(-5, 2), rat(1, 7)] {
            let b = metric_mu(g1, mu.clone());
            assert!(is_ad_invariant(&g, &b).unwrap().is_pass());
            // e0 -> e0 - (μ/2) e3 leaves every bracket unchanged
            let p = basis_change(vec![int(1), int(0), int(0), -mu / int(2)]);
            assert_eq!(g.change_of_basis(&p).unwrap(), g);
            assert_eq!(b.congruence(&p), target);
        }
    }
}

#[test]
fn the_sqrt_rescaling_only_works_at_mu_two() {
    // μ = 3: the new e0 = √(2/3) e0 − e3 lives in ℚ(√6).
    let g = lift(&catalog::g0());
    let mu = rat(3, 1);
    let s = QuadExt::new(int(0), rat(1, 3), int(6)).unwrap(); // √6/3 = √(2/3)
    assert_eq!(s.clone() * s.clone(), QuadExt::from_rational(rat(2, 3)));
    let minus_one = QuadExt::from_rational(int(-1));
    let zero = QuadExt::from_rational(int(0));
    let p = basis_change(vec![s.clone(), zero.clone(), zero, minus_one]);
    let b = metric_mu(false, QuadExt::from_rational(mu));
    let c = b.congruence(&p);
    // ⟨e0', e0'⟩ = 2 − 2√(2/3) ≠ 0 and ⟨e0', e3⟩ = √(2/3) ≠ 1
    assert_eq!(*c.entry(0, 0), QuadExt::from_rational(int(2)) - s.clone() * QuadExt::from_rational(int(2)));
    assert_eq!(*c.entry(0, 3), s);
    // and the brackets pick up the factor √(2/3)
    let h = g.change_of_basis(&p).unwrap();
    assert_ne!(h, g);

    // At μ = 2 the same recipe is rational and does land on the normal form.
    let p = basis_change(vec![int(1), int(0), int(0), int(-1)]);
    assert_eq!(metric_mu(false, int(2)).congruence(&p), catalog::gmatrix0_left());
}
