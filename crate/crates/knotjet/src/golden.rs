//! Published reference values for the shipped presets.
//!
//! Polynomials are listed with descending powers of `w`; `scale` multiplies
//! the whole polynomial. An amplitude is `scale·P(w)·σ^{−r/2}·(2ϖ_A)^{−d}`.

use crate::algebra::poly::QPoly;
use crate::algebra::ring::{q, QQ};
use num_rational::BigRational;

#[derive(Clone, Copy, Debug)]
pub struct GoldenAmplitude {
    pub n: usize,
    pub h: usize,
    pub d: usize,
    pub r: i64,
    pub scale: (i64, i64),
    pub desc: &'static [i64],
}

impl GoldenAmplitude {
    /// Ascending coefficients with the scale applied.
    pub fn num(&self) -> Vec<BigRational> {
        self.desc
            .iter()
            .rev()
            .map(|&c| q(c * self.scale.0, self.scale.1))
            .collect()
    }

    pub fn label(&self) -> String {
        format!("G_{}^{{{},({})}}", self.n, self.h, self.d)
    }
}

/// `ĵ_χ = scale·P(w)·σ^{−r/2}`.
#[derive(Clone, Copy, Debug)]
pub struct GoldenJet {
    pub chi: usize,
    pub r: i64,
    pub scale: (i64, i64),
    pub desc: &'static [i64],
}

impl GoldenJet {
    pub fn poly(&self) -> QPoly {
        QPoly::new(
            &QQ,
            self.desc
                .iter()
                .rev()
                .map(|&c| q(c * self.scale.0, self.scale.1))
                .collect(),
        )
    }
}

const fn amp(
    n: usize,
    h: usize,
    d: usize,
    r: i64,
    scale: (i64, i64),
    desc: &'static [i64],
) -> GoldenAmplitude {
    GoldenAmplitude {
        n,
        h,
        d,
        r,
        scale,
        desc,
    }
}

pub const FIGURE_EIGHT_AMPLITUDES: &[GoldenAmplitude] = &[
    amp(3, 0, 0, 3, (1, 6), &[-12, 12, -7]),
    amp(1, 0, 2, 1, (2, 15), &[-4, 3]),
    amp(1, 1, 0, 3, (1, 90), &[-8, 44, -30, -87]),
    amp(4, 0, 0, 6, (1, 3), &[16, -32, 24, 44, -67, 25]),
    amp(2, 0, 2, 4, (2, 135), &[64, -232, 156, 378, -243]),
    amp(0, 0, 4, 0, (-256, 10125), &[1]),
    amp(
        2,
        1,
        0,
        6,
        (1, 1620),
        &[1280, -9088, 13136, 22176, -17928, -26352, 23193],
    ),
    amp(0, 1, 2, 0, (-368, 10125), &[1]),
    amp(
        5,
        0,
        0,
        9,
        (1, 60),
        &[-640, 1600, -1440, -9520, 18184, -3988, -18542, 19071, -5644],
    ),
    amp(
        3,
        0,
        2,
        7,
        (2, 30375),
        &[
            -37888, 283424, -471088, -636000, 1368360, 174906, -1767663, 883791,
        ],
    ),
    // the sign in front of 370230w² is missing from the display; + reproduces it
    amp(
        1,
        0,
        4,
        5,
        (4, 455625),
        &[94208, -287512, 76748, 370230, -112527, -219564],
    ),
    amp(
        3,
        1,
        0,
        9,
        (1, 109350),
        &[
            -249856, 2901504, -6701952, -8240960, 8573472, 30776112, -55663848, -12104316,
            71667990, -34229709,
        ],
    ),
    amp(
        1,
        1,
        2,
        7,
        (8, 455625),
        &[
            353792, -1479360, 1280256, 1398544, -1258392, -1990008, -10098, 1832382,
        ],
    ),
    amp(
        1,
        2,
        0,
        9,
        (1, 2733750),
        &[
            13238272, -70087552, 94437312, 49067168, -177750608, 952056, -78657516, 179205966,
            191047329, -219603474,
        ],
    ),
];

pub const L2R_AMPLITUDES: &[GoldenAmplitude] = &[
    amp(3, 0, 0, 3, (-1, 24), &[8, 36, 6, 19]),
    amp(1, 0, 2, 1, (1, 14), &[-6, 7]),
    amp(1, 1, 0, 3, (1, 168), &[40, -12, -210, -217]),
    amp(
        4,
        0,
        0,
        6,
        (1, 192),
        &[64, 832, -144, 3168, 1532, -2060, 1257],
    ),
    amp(2, 0, 2, 4, (1, 294), &[144, -816, 952, 1988, -931]),
    amp(0, 0, 4, 0, (-27, 1372), &[1]),
    amp(
        2,
        1,
        0,
        6,
        (1, 28224),
        &[7872, -116544, 341968, 841120, -443884, -350644, 556003],
    ),
    amp(0, 1, 2, 0, (-57, 2744), &[1]),
];

pub const FIGURE_EIGHT_JETS: &[GoldenJet] = &[
    GoldenJet {
        chi: 1,
        r: 3,
        scale: (-1, 12),
        desc: &[8, -4, -10, 17],
    },
    GoldenJet {
        chi: 2,
        r: 6,
        scale: (2, 1),
        desc: &[8, -4, -10, 7],
    },
    GoldenJet {
        chi: 3,
        r: 9,
        scale: (1, 90),
        desc: &[256, -512, -8704, 2048, 29792, -46928, 1272, 49164, -27469],
    },
];

/// As displayed; the engine's `ĵ₁` is half of the first entry.
pub const L2R_JETS: &[GoldenJet] = &[
    GoldenJet {
        chi: 1,
        r: 3,
        scale: (1, 24),
        desc: &[-40, 44, -14, -127],
    },
    GoldenJet {
        chi: 2,
        r: 6,
        scale: (1, 128),
        desc: &[-64, 192, 1168, 3488, -2300, -2996, 2071],
    },
];

/// Per-curve scalar references.
#[derive(Clone, Debug)]
pub struct GoldenCurve {
    pub name: &'static str,
    pub g2: (i64, i64),
    pub g3: (i64, i64),
    /// squarefree `d` of the theta field `Q[√d]`
    pub theta_disc: i64,
    /// `(a, b)` for `a + b√d`, as an unordered triple up to the orbit action
    pub theta: [((i64, i64), (i64, i64)); 3],
    /// `T₂, T₄, T₆, T₈` at `i₀`
    pub serre: [(i64, i64); 4],
    pub sigma_one: i64,
    pub amplitudes: &'static [GoldenAmplitude],
    pub jets: &'static [GoldenJet],
}

pub const CURVES: &[GoldenCurve] = &[
    GoldenCurve {
        name: "4_1",
        g2: (-1, 12),
        g3: (161, 216),
        theta_disc: -15,
        theta: [((7, 8), (1, 8)), ((7, 8), (-1, 8)), ((0, 1), (-1, 4))],
        serre: [(7, 12), (-47, 48), (-301, 576), (-28285, 6912)],
        sigma_one: -3,
        amplitudes: FIGURE_EIGHT_AMPLITUDES,
        jets: FIGURE_EIGHT_JETS,
    },
    GoldenCurve {
        name: "L2R",
        g2: (-25, 12),
        g3: (253, 216),
        theta_disc: -7,
        theta: [((11, 8), (-1, 8)), ((11, 8), (1, 8)), ((0, 1), (1, 4))],
        serre: [(11, 12), (-71, 48), (319, 576), (-16333, 6912)],
        sigma_one: -7,
        amplitudes: L2R_AMPLITUDES,
        jets: L2R_JETS,
    },
];

pub fn curve(name: &str) -> Option<&'static GoldenCurve> {
    let c = crate::curve::preset(name).ok()?;
    CURVES.iter().find(|g| g.name == c.label())
}

/// `ĵ_χ(1)` for 4₁ as `coeff·(−3)^{−3χ/2}`.
pub const FIGURE_EIGHT_AT_ONE: [(i64, i64); 3] = [(-11, 12), (2, 1), (-1081, 90)];

/// Coefficients of `ε_N, ε_N², ε_N³` in the published Kashaev expansion.
pub const KASHAEV_STATED: [(i64, i64); 3] = [(11, 2), (2, 1), (-1081, 90)];

/// The four rational summands of `2ĵ₂(1)` for 4₁, in the order `G₂¹`, `G₄⁰`,
/// `T₂G₂^{0,(2)}`, `½(T₄ − T₂²)(G₁^{0,(2)})²`.
pub const FIGURE_EIGHT_TWO_J2_TERMS: [(i64, i64); 4] =
    [(-713, 4860), (-600, 4860), (574, 4860), (19, 4860)];

/// `C_ℏ = 1 + ℏ²/128` for L2R.
pub const L2R_HIKAMI_SHIFT: (i64, i64) = (1, 128);

/// Reference `Im ĵ₋₁(iπ)` for 4₁, `D(e^{iπ/3})`.
pub const FIGURE_EIGHT_HALF_VOLUME: f64 = 1.014_941_606_409_653_6;
