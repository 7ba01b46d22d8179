//! The nonlocal energy `H(u) = max_{s,t ∈ S(u)} h([u](s), [u](t))`, its
//! hulled variant and the local energy `G(u) = max_t g([u](t))`.
//!
//! The maximum runs over all ordered pairs of jump points, the diagonal
//! `s = t` included. A function without jumps has energy `inf h`.

use crate::supremand::{Density, LocalDensity};
use crate::{ExtReal, Result, StepFunction};

/// Value of an energy and the jump indices realizing it.
///
/// For `H` the pair is `(s, t)`; for `G` both entries are the index of the
/// maximizing jump. Ties go to the lexicographically smallest pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnergyValue {
    pub value: ExtReal,
    pub attaining_pair: Option<(usize, usize)>,
}

pub fn evaluate_h(u: &StepFunction, h: &dyn Density) -> Result<EnergyValue> {
    let jumps = u.jump_profile();
    let jumps = jumps.jumps();
    let mut best: Option<(ExtReal, (usize, usize))> = None;
    for (s, &js) in jumps.iter().enumerate() {
        for (t, &jt) in jumps.iter().enumerate() {
            let v = h.eval(js, jt)?;
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, (s, t)));
            }
        }
    }
    Ok(match best {
        Some((value, pair)) => EnergyValue {
            value,
            attaining_pair: Some(pair),
        },
        None => EnergyValue {
            value: h.declared_infimum(),
            attaining_pair: None,
        },
    })
}

/// `H` computed with the hull `ĥ` of `h` in place of `h`.
pub fn evaluate_h_hulled(u: &StepFunction, h: &dyn Density) -> Result<EnergyValue> {
    evaluate_h(u, &HullView(h))
}

pub fn evaluate_g(u: &StepFunction, g: &LocalDensity) -> Result<EnergyValue> {
    let mut best: Option<(ExtReal, usize)> = None;
    for (i, &j) in u.jump_profile().jumps().iter().enumerate() {
        let v = g.eval(j)?;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, i));
        }
    }
    Ok(match best {
        Some((value, i)) => EnergyValue {
            value,
            attaining_pair: Some((i, i)),
        },
        None => EnergyValue {
            value: g.declared_infimum(),
            attaining_pair: None,
        },
    })
}

/// Pointwise hull of a borrowed density.
struct HullView<'a>(&'a dyn Density);

impl Density for HullView<'_> {
    fn name(&self) -> String {
        format!("hull({})", self.0.name())
    }

    fn eval(&self, x: f64, y: f64) -> Result<ExtReal> {
        let h = self.0;
        Ok(h.eval(x, x)?
            .max(h.eval(y, y)?)
            .max(h.eval(y, x)?)
            .max(h.eval(x, y)?))
    }

    fn declared_infimum(&self) -> ExtReal {
        self.0.declared_infimum()
    }

    fn default_tol(&self) -> f64 {
        self.0.default_tol()
    }

    fn alphabet(&self) -> Option<&[f64]> {
        self.0.alphabet()
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::supremand::GridSupremand;
    use crate::{Error, Interval};

    fn iv() -> Interval {
        Interval::new(0.0, 10.0).unwrap()
    }

    fn with_jumps(jumps: &[f64]) -> StepFunction {
        let breaks: Vec<f64> = (1..=jumps.len()).map(|k| k as f64).collect();
        StepFunction::from_jumps(iv(), 0.0, &breaks, jumps).unwrap()
    }

    fn table(rows: [[f64; 2]; 2]) -> GridSupremand {
        GridSupremand::new(
            vec![1.0, 2.0],
            rows.iter()
                .map(|r| r.iter().map(|&v| v.into()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_function_gets_the_infimum() {
        let h = table([[1.0, 3.0], [3.0, 2.0]]);
        let u = StepFunction::constant(iv(), 4.0).unwrap();
        let e = evaluate_h(&u, &h).unwrap();
        assert_eq!(e.value, ExtReal::Finite(1.0));
        assert_eq!(e.attaining_pair, None);
    }

    #[test]
    fn max_over_a_small_table() {
        let h = table([[1.0, 3.0], [3.0, 2.0]]);
        let e = evaluate_h(&with_jumps(&[1.0, 2.0]), &h).unwrap();
        assert_eq!(e.value, ExtReal::Finite(3.0));
        assert_eq!(e.attaining_pair, Some((0, 1)));
    }

    #[test]
    fn diagonal_pairs_count() {
        // the off-diagonal entries are small; only (s, s) reaches 5
        let h = table([[5.0, 0.0], [0.0, 1.0]]);
        let e = evaluate_h(&with_jumps(&[1.0, 2.0]), &h).unwrap();
        assert_eq!(e.value, ExtReal::Finite(5.0));
        assert_eq!(e.attaining_pair, Some((0, 0)));
    }

    #[test]
    fn hulled_matches_on_asymmetric_example() {
        let h = table([[1.0, 0.0], [3.0, 2.0]]);
        let u = with_jumps(&[1.0, 2.0]);
        assert_eq!(evaluate_h(&u, &h).unwrap().value, ExtReal::Finite(3.0));
        assert_eq!(
            evaluate_h_hulled(&u, &h).unwrap().value,
            ExtReal::Finite(3.0)
        );
        assert_eq!(
            evaluate_h_hulled(&u, &h).unwrap(),
            evaluate_h(&u, &h.hull()).unwrap()
        );
    }

    #[test]
    fn jump_outside_alphabet_is_an_error() {
        let h = table([[1.0, 0.0], [3.0, 2.0]]);
        assert!(matches!(
            evaluate_h(&with_jumps(&[1.0, 5.0]), &h),
            Err(Error::NotInAlphabet(_))
        ));
    }

    #[test]
    fn top_dominates() {
        let h = GridSupremand::new(
            vec![1.0, 2.0],
            vec![
                vec![ExtReal::Bottom, ExtReal::Top],
                vec![ExtReal::Finite(7.0), ExtReal::Bottom],
            ],
        )
        .unwrap();
        let e = evaluate_h(&with_jumps(&[1.0, 2.0]), &h).unwrap();
        assert_eq!(e.value, ExtReal::Top);
        let e = evaluate_h(&with_jumps(&[1.0]), &h).unwrap();
        assert_eq!(e.value, ExtReal::Bottom);
        assert_eq!(e.attaining_pair, Some((0, 0)));
    }

    #[test]
    fn local_energy() {
        let abs = LocalDensity::from_spec("abs", None).unwrap();
        let e = evaluate_g(&with_jumps(&[1.0, 2.0, 3.0]), &abs).unwrap();
        assert_eq!(e.value, ExtReal::Finite(3.0));
        assert_eq!(e.attaining_pair, Some((2, 2)));
        let flat = StepFunction::constant(iv(), 0.0).unwrap();
        assert_eq!(evaluate_g(&flat, &abs).unwrap().value, ExtReal::ZERO);

        let g = LocalDensity::from_spec("sin-ratio", None).unwrap();
        let e = evaluate_g(&with_jumps(&[PI / 2.0, PI]), &g).unwrap();
        let v = e.value.finite().unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-15);
        assert_eq!(e.attaining_pair, Some((0, 0)));
    }
}
