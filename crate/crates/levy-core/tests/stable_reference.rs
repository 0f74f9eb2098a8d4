//! Quadrature and series against an independent high-precision oracle.
//!
//! The reference values were computed offline with mpmath at 50 decimal
//! digits and frozen here before the Rust quadrature was tuned. The oracle
//! integrates the contour-rotated representation (substituting
//! `q = r e^{i theta}` turns the cosine transform into an exponentially
//! damped smooth integral), which reproduces the Cauchy and Gaussian closed
//! forms and the gamma-function value at the origin to all 50 digits.
//! A first cut of this table used `mpmath.quadosc` on the oscillatory form
//! directly; that quietly lost ~1e-7 for indices at and below 0.7, which is
//! worth remembering before trusting any one oscillatory-integration scheme.

use levy_core::stable_density::{Method, QuadratureOptions, SeriesTruncation};
use levy_core::StableDensitySpec;

/// (beta, gamma, x, density)
const REFERENCE: &[(f64, f64, f64, f64)] = &[
    (0.3, 1.0, 0.0, 2.9477176990288191),
    (0.3, 1.0, 0.5, 0.10723879336530313),
    (0.3, 1.0, 1.0, 0.053395871244663170),
    (0.3, 1.0, 2.0, 0.025604819278083996),
    (0.3, 1.0, 5.0, 0.0092514021292490988),
    (0.3, 1.0, 10.0, 0.0041644333274876548),
    (0.5, 1.0, 0.0, 0.63661977236758134),
    (0.5, 1.0, 0.5, 0.17076240172520622),
    (0.5, 1.0, 1.0, 0.086107146912604118),
    (0.5, 1.0, 2.0, 0.039142858049651343),
    (0.5, 1.0, 5.0, 0.012348680402371540),
    (0.5, 1.0, 10.0, 0.0048722553837211162),
    (0.67, 1.0, 0.0, 0.42093334545195515),
    (0.67, 1.0, 0.5, 0.21425546008429376),
    (0.67, 1.0, 1.0, 0.11248921174007240),
    (0.67, 1.0, 2.0, 0.048622512627509781),
    (0.67, 1.0, 5.0, 0.013295657965811632),
    (0.67, 1.0, 10.0, 0.0045983570244519783),
    (0.7, 1.0, 0.0, 0.40292413614186070),
    (0.7, 1.0, 0.5, 0.22043975216791349),
    (0.7, 1.0, 1.0, 0.11702720820789360),
    (0.7, 1.0, 2.0, 0.050141043561614475),
    (0.7, 1.0, 5.0, 0.013335610024507800),
    (0.7, 1.0, 10.0, 0.0044993356942449157),
    (1.2, 1.0, 0.0, 0.29942005917982891),
    (1.2, 1.0, 0.5, 0.25999563346108337),
    (1.2, 1.0, 1.0, 0.18096537440816913),
    (1.2, 1.0, 2.0, 0.071920113170471865),
    (1.2, 1.0, 5.0, 0.010498945454991378),
    (1.2, 1.0, 10.0, 0.0022034104706648835),
    (1.5, 1.0, 0.0, 0.28735275145216445),
    (1.5, 1.0, 0.5, 0.26229684035409004),
    (1.5, 1.0, 1.0, 0.20203815960784013),
    (1.5, 1.0, 2.0, 0.084539623126137520),
    (1.5, 1.0, 5.0, 0.0071117360476548068),
    (1.5, 1.0, 10.0, 0.0010477760249294405),
    (1.8, 1.0, 0.0, 0.28306875859161901),
    (1.8, 1.0, 0.5, 0.26385189589824977),
    (1.8, 1.0, 1.0, 0.21418871210506860),
    (1.8, 1.0, 2.0, 0.096700976593629995),
    (1.8, 1.0, 5.0, 0.0032653013158332458),
    (1.8, 1.0, 10.0, 0.00029763350392926121),
    (1.99, 1.0, 0.0, 0.28212148818989831),
    (1.99, 1.0, 0.5, 0.26494371273441662),
    (1.99, 1.0, 1.0, 0.21945322934999363),
    (1.99, 1.0, 2.0, 0.10344705723879854),
    (1.99, 1.0, 5.0, 0.00068351332631292718),
    (1.99, 1.0, 10.0, 1.1584350540651594e-5),
    (0.7, 0.5, 1.0, 0.089579282759780246),
    (1.5, 2.0, 3.0, 0.059390873869471342),
    (1.2, 0.25, 0.0, 0.95059943384488191),
    (0.5, 4.0, 2.0, 0.027229275110538950),
    (0.7, 1.0, 50.0, 0.00031987145104844134),
    (0.7, 1.0, 500.0, 6.5974515091383801e-6),
    (1.5, 1.0, 20.0, 0.00017336690689247097),
    (1.5, 1.0, 50.0, 1.7079364753434624e-5),
    (1.5, 1.0, 500.0, 5.3539005169115137e-8),
    (0.3, 1.0, 100.0, 0.00026064220479534892),
];

#[test]
fn quadrature_matches_reference_table() {
    let mut worst = 0.0f64;
    for &(beta, gamma, x, expected) in REFERENCE {
        let spec = StableDensitySpec::new(beta, gamma).unwrap();
        let got = spec.density_quadrature(x).unwrap();
        let diff = (got - expected).abs();
        worst = worst.max(diff);
        assert!(
            diff < 2e-10,
            "beta {beta} gamma {gamma} x {x}: got {got}, expected {expected}, diff {diff:.3e}"
        );
    }
    assert!(worst > 0.0, "degenerate comparison");
}

#[test]
fn reported_error_estimate_covers_true_error() {
    for &(beta, gamma, x, expected) in REFERENCE {
        let spec = StableDensitySpec::new(beta, gamma).unwrap();
        let eval = spec
            .density_quadrature_with(x, &QuadratureOptions::default())
            .unwrap();
        let diff = (eval.value - expected).abs();
        assert!(
            diff <= eval.error_estimate.max(1e-12),
            "beta {beta} gamma {gamma} x {x}: diff {diff:.3e} above estimate {:.3e}",
            eval.error_estimate
        );
    }
}

#[test]
fn auto_dispatch_matches_reference_table() {
    for &(beta, gamma, x, expected) in REFERENCE {
        let spec = StableDensitySpec::new(beta, gamma).unwrap();
        let got = spec.density(x).unwrap();
        assert!(
            (got - expected).abs() < 2e-10,
            "beta {beta} gamma {gamma} x {x}: got {got}, expected {expected}"
        );
    }
}

#[test]
fn series_at_crossover_meets_quadrature() {
    // The auto series path takes over exactly at the calibrated crossover;
    // at and beyond it the default truncation must agree with quadrature to
    // the default tolerance from both sides of each calibration knot.
    let trunc = SeriesTruncation::new(8).unwrap();
    for &beta in &[0.3, 0.35, 0.5, 0.64, 0.7, 0.9, 1.05, 1.2, 1.5, 1.75, 1.9, 1.99] {
        let spec = StableDensitySpec::new(beta, 1.0).unwrap();
        let x0 = levy_core::stable_density::series_crossover(beta);
        assert!(x0.is_finite(), "beta {beta}: no finite crossover");
        for factor in [1.0, 1.7, 4.0] {
            let x = x0 * factor;
            let quad = spec.density_quadrature(x).unwrap();
            let series = spec.density_series(x, trunc).unwrap().value;
            let diff = (series - quad).abs();
            assert!(
                diff < 2e-10,
                "beta {beta} x {x}: series {series}, quad {quad}, diff {diff:.3e}"
            );
        }
    }
}

#[test]
fn tiny_index_never_dispatches_to_series() {
    let spec = StableDensitySpec::new(0.05, 1.0).unwrap();
    assert_eq!(spec.select_method(1e18), Method::Quadrature);
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

#[test]
fn quadrature_mass_is_unity() {
    // Body integral over [-X, X] by symmetry, plus the tail integrated term
    // by term: each truncation increment t_k scales like x^(-beta k - 1), so
    // its tail integral from X is t_k(X) * X / (beta k). Three terms leave a
    // remainder far below the gate at X = 50.
    let x_cut = 50.0;
    for &beta in &[0.7, 1.0, 1.5, 2.0] {
        let spec = StableDensitySpec::new(beta, 1.0).unwrap();
        let f = |x: f64| spec.density_quadrature(x).unwrap();
        let body = simpson(&f, 0.0, 2.0, 80) + simpson(&f, 2.0, x_cut, 480);

        let mut tail = 0.0;
        let mut prev = 0.0;
        for k in 1..=3usize {
            let trunc = SeriesTruncation::new(k).unwrap();
            let partial = spec.density_series(x_cut, trunc).unwrap().value;
            tail += (partial - prev) * x_cut / (beta * k as f64);
            prev = partial;
        }

        let mass = 2.0 * (body + tail);
        assert!(
            (mass - 1.0).abs() < 1e-4,
            "beta {beta}: mass {mass:.8}, tail {tail:.3e}"
        );
    }
}
