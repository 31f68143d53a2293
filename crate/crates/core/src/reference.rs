//! Frozen benchmark spectra for the potential family.
//!
//! Two tiers. [`BENCHMARKS`] holds externally cross-checked energies quoted
//! at their source precision; `rel_tol` encodes how many digits each set is
//! good for. [`REGRESSION`] holds tighter anchors produced by running the
//! shooting integrator and the Richardson-extrapolated matrix
//! discretizations to mutual agreement, frozen here so that future changes
//! to either solver are caught immediately.
//!
//! Level indices are absolute (ground state = 0), so a set may list a
//! non-contiguous selection of levels.

/// One frozen spectrum: member exponents, dimensionless depth, and the
/// `(level, energy)` pairs it pins down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumFixture {
    pub p: i32,
    pub q: i32,
    /// Dimensionless depth 2 m0 d^2 V0 / hbar^2.
    pub vcal0: f64,
    /// Relative tolerance a computed spectrum must meet against `levels`.
    pub rel_tol: f64,
    pub levels: &'static [(usize, f64)],
}

/// Externally cross-checked energies, at quoted precision.
pub const BENCHMARKS: &[SpectrumFixture] = &[
    SpectrumFixture {
        p: -2,
        q: 0,
        vcal0: 1.0 / 32.0,
        rel_tol: 1e-4,
        levels: &[(0, 5.8708), (1, 19.7417)],
    },
    SpectrumFixture {
        p: -2,
        q: 0,
        vcal0: -32.0,
        rel_tol: 1e-4,
        levels: &[(0, 26.7156), (1, 61.4313)],
    },
    SpectrumFixture {
        p: 0,
        q: 2,
        vcal0: 1.0 / 32.0,
        rel_tol: 1e-6,
        levels: &[
            (0, 1.9749958440),
            (1, 5.982139325300),
            (2, 11.983335512),
            (3, 19.9837682118),
        ],
    },
    SpectrumFixture {
        p: 0,
        q: 2,
        vcal0: -50.0,
        rel_tol: 1e-6,
        levels: &[
            (0, 26.08773401704787),
            (1, 26.10903614483),
            (2, 45.5205884270),
            (3, 47.56773146428),
        ],
    },
    SpectrumFixture {
        p: 2,
        q: 4,
        vcal0: 50.0,
        rel_tol: 1e-6,
        levels: &[
            (0, -5.210246244135),
            (1, -3.793253878015),
            (2, 5.7464269736389),
            (3, 13.0906628480),
        ],
    },
    SpectrumFixture {
        p: 2,
        q: 4,
        vcal0: -50.0,
        rel_tol: 1e-6,
        levels: &[
            (0, 6.46273117442),
            (1, 15.1770345117),
            (2, 20.09128324147),
            (3, 26.7184553916),
        ],
    },
    SpectrumFixture {
        p: 2,
        q: 4,
        vcal0: -150.0,
        rel_tol: 1e-6,
        levels: &[(0, 11.675703293036), (2, 37.459017784502)],
    },
];

/// Solver-agreement anchors (shooting vs. extrapolated matrix oracles),
/// frozen at the resolution where the two pipelines coincide.
pub const REGRESSION: &[SpectrumFixture] = &[
    SpectrumFixture {
        p: 0,
        q: 2,
        vcal0: 1.0 / 32.0,
        rel_tol: 5e-7,
        levels: &[
            (0, 1.9749955394413),
            (1, 5.9821390614388),
            (2, 11.9833346625484),
            (3, 19.9837673958136),
        ],
    },
    SpectrumFixture {
        p: 0,
        q: 2,
        vcal0: -50.0,
        rel_tol: 5e-7,
        levels: &[
            (0, 26.08773375809913),
            (1, 26.10903587400249),
            (2, 45.52058804646570),
            (3, 47.56773094600398),
        ],
    },
    SpectrumFixture {
        p: 2,
        q: 4,
        vcal0: 50.0,
        rel_tol: 5e-7,
        levels: &[
            (0, -5.2102462186045),
            (1, -3.7932536989651),
            (2, 5.7464265058812),
            (3, 13.0906621438411),
        ],
    },
    SpectrumFixture {
        p: 2,
        q: 4,
        vcal0: -50.0,
        rel_tol: 5e-7,
        levels: &[
            (0, 6.4627312319911),
            (1, 15.1770342346617),
            (2, 20.0912831185075),
            (3, 26.7184550390930),
        ],
    },
    SpectrumFixture {
        p: 2,
        q: 4,
        vcal0: -150.0,
        rel_tol: 5e-7,
        levels: &[(0, 11.6757034103266), (1, 30.6684358449122), (2, 37.4590175138352)],
    },
    SpectrumFixture {
        p: 1,
        q: 1,
        vcal0: 1.0,
        rel_tol: 5e-7,
        levels: &[(0, 1.950333905232), (1, 6.011577927258), (2, 12.008326144406)],
    },
];

/// Look up a fixture by member and depth (depth matched to 1e-12 absolute).
pub fn find(table: &'static [SpectrumFixture], p: i32, q: i32, vcal0: f64) -> Option<&'static SpectrumFixture> {
    table.iter().find(|f| f.p == p && f.q == q && (f.vcal0 - vcal0).abs() < 1e-12)
}
