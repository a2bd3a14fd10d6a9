//! Topological recursion with the Weierstrass Bergman kernel.

pub mod closed;
pub mod engine;
pub mod frame;
pub mod integrate;
pub mod modp;
pub mod wp;

pub use engine::{level_pairs, Context, FormTable, Key, Slot, WeierstrassForm};
pub use frame::{local_frame, CurvePolys, LocalFrame};
pub use integrate::{to_w, Amplitude};
pub use modp::{exact_amplitudes, rational_amplitudes, run_forms, AmplitudeTable};

use crate::algebra::series::SeriesError;

#[derive(Debug, thiserror::Error)]
pub enum TrError {
    #[error("series: {0}")]
    Series(#[from] SeriesError),
    #[error("odd derivative order survived in ω_{n}^{h}")]
    OddDerivative { n: usize, h: usize },
    #[error("odd integrand at center {center} while computing ω_{n}^{h}")]
    ParityGuard { n: usize, h: usize, center: usize },
    #[error("curve: {0}")]
    Curve(String),
    #[error("level {0} not computed")]
    LevelNotComputed(i64),
    #[error("amplitude coefficient outside the base field")]
    NotRational,
    #[error("ι-invariant rewrite left a remainder")]
    Remainder,
    #[error("odd-d amplitude G_{n}^{{{h},({d})}} does not vanish")]
    OddD { n: usize, h: usize, d: usize },
    #[error("rational reconstruction did not stabilize")]
    Reconstruction,
}

impl TrError {
    pub fn is_truncation(&self) -> bool {
        matches!(self, TrError::Series(SeriesError::Truncated(..)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{q, QQ};
    use num_rational::BigRational;

    fn frac(c: &[i64], den: i64) -> Vec<BigRational> {
        c.iter().map(|&x| q(x, den)).collect()
    }

    #[test]
    fn figure_eight_level_one_amplitudes() {
        let c = crate::curve::preset("4_1").unwrap();
        let ctx = Context::rational(&c, 10).unwrap();
        let om = ctx.run(1).unwrap();
        let g = ctx.amplitude(&om, 3, 0, 0).unwrap();
        assert_eq!((g.r, g.num.clone()), (3, frac(&[-7, 12, -12], 6)));
        let g = ctx.amplitude(&om, 1, 0, 2).unwrap();
        assert_eq!((g.r, g.num.clone(), g.grade), (1, frac(&[6, -8], 15), -2));
        let g = ctx.amplitude(&om, 1, 1, 0).unwrap();
        assert_eq!((g.r, g.num.clone()), (3, frac(&[-87, -30, 44, -8], 90)));
        let _ = QQ;
    }
}
