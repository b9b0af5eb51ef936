//! Built-in identity and invariant checks, runnable from the command line.

use nakagami_aber::aber::{
    aber_closed, aber_lu_closed, aber_oracle, avg_q2_oracle, avg_q_oracle, beta_term, lemma2_avg_q, r2_quadrature,
    r2_series, BerKind,
};
use nakagami_aber::quad::integrate_finite;
use nakagami_aber::specfun::{appell_f1, gauss_q, reg_inc_beta};
use nakagami_aber::{ChannelParams, Modulation, QuadratureSpec, Result, TruncationPolicy};

/// Shape parameters, mean SNRs (dB) and QAM orders of the identity grid.
pub const GRID_M: [f64; 4] = [0.6, 1.0, 2.5, 4.1];
pub const GRID_SNR_DB: [f64; 5] = [-5.0, 0.0, 10.0, 20.0, 30.0];
pub const GRID_ORDERS: [u32; 4] = [4, 16, 256, 4096];

/// Outcome of one group: the worst error seen against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub worst: f64,
    pub tolerance: f64,
    pub points: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

pub struct Group {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn() -> Result<Report>,
}

pub const GROUPS: &[Group] = &[
    Group {
        name: "lemma1",
        description: "Q(z) equals (1/π)∫₀^{π/2} exp(-z²/(2 sin²θ)) dθ, z ∈ {0.1, 0.5, 1, 2, 4}",
        run: lemma1,
    },
    Group {
        name: "lemma2",
        description: "E[Q(√(2αγ))] = ½ I_{m/(m+αγ̄)}(m, ½) against quadrature on the identity grid",
        run: lemma2,
    },
    Group {
        name: "lemma3",
        description: "E[Q²(√(2αγ))] = ¼ I - R₂ against quadrature on the identity grid",
        run: lemma3,
    },
    Group {
        name: "reflection",
        description: "I_x(a, b) + I_{1-x}(b, a) = 1 on a fixed scattered grid",
        run: reflection,
    },
    Group {
        name: "termination",
        description: "integer m: the R₂ series stops after m terms and matches quadrature",
        run: termination,
    },
    Group {
        name: "sandwich",
        description: "0 < closed-form ABER <= nearest-neighbour ABER, and closed form <= 1/2",
        run: sandwich,
    },
    Group {
        name: "limits",
        description: "γ̄ → 0: closed form and oracle → 0.4375 (4-QAM), nearest-neighbour → 0.5",
        run: limits,
    },
    Group {
        name: "appell",
        description: "F1(1; 1, 1; 2; -1, -2) = ln(3/2)",
        run: appell,
    },
];

pub fn find(name: &str) -> Option<&'static Group> {
    GROUPS.iter().find(|g| g.name == name)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn grid() -> impl Iterator<Item = (ChannelParams<f64>, Modulation<f64>)> {
    GRID_M.into_iter().flat_map(|m| {
        GRID_SNR_DB.into_iter().flat_map(move |db| {
            GRID_ORDERS.into_iter().map(move |order| {
                (
                    ChannelParams::from_db(m, db).expect("grid channel"),
                    Modulation::qam(order).expect("grid order"),
                )
            })
        })
    })
}

fn tight() -> Result<QuadratureSpec<f64>> {
    QuadratureSpec::relative(1e-12)
}

fn fold(reports: impl Iterator<Item = Result<f64>>, tolerance: f64) -> Result<Report> {
    let mut worst = 0.0f64;
    let mut points = 0;
    for err in reports {
        let err = err?;
        // NaN must fail the group.
        worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
        points += 1;
    }
    Ok(Report {
        worst,
        tolerance,
        points,
    })
}

fn lemma1() -> Result<Report> {
    let spec = tight()?;
    let zs = [0.1, 0.5, 1.0, 2.0, 4.0];
    fold(
        zs.into_iter().map(|z| {
            let integral = integrate_finite(
                |theta: f64| (-z * z / (2.0 * theta.sin().powi(2))).exp(),
                0.0,
                std::f64::consts::FRAC_PI_2,
                &spec,
            )?
            .require_converged("lemma1")?;
            Ok(rel(integral / std::f64::consts::PI, gauss_q(z)))
        }),
        1e-9,
    )
}

fn lemma2() -> Result<Report> {
    let spec = tight()?;
    fold(
        grid().map(|(ch, md)| {
            let oracle = avg_q_oracle(&ch, md.c1(), &spec)?.require_converged("lemma2")?;
            Ok(rel(lemma2_avg_q(&ch, md.c1())?, oracle))
        }),
        1e-8,
    )
}

fn lemma3() -> Result<Report> {
    let spec = tight()?;
    fold(
        grid().map(|(ch, md)| {
            let oracle = avg_q2_oracle(&ch, md.c1(), &spec)?.require_converged("lemma3")?;
            let identity = 0.25 * beta_term(&ch, md.c1())? - r2_quadrature(&ch, md.c1(), &spec)?;
            Ok(rel(identity, oracle))
        }),
        1e-7,
    )
}

fn reflection() -> Result<Report> {
    // Deterministic scatter: golden-ratio sequences over the parameter box.
    let phi = 0.618_033_988_749_894_9_f64;
    fold(
        (1..=200).map(|k| {
            let k = k as f64;
            let x = (k * phi).fract() * 0.998 + 0.001;
            let a = 0.05 + 20.0 * (k * phi * phi).fract();
            let b = 0.05 + 20.0 * (k * phi * phi * phi).fract();
            let sum = reg_inc_beta(x, a, b)? + reg_inc_beta(1.0 - x, b, a)?;
            Ok((sum - 1.0).abs())
        }),
        1e-12,
    )
}

fn termination() -> Result<Report> {
    let spec = tight()?;
    let adaptive = TruncationPolicy::adaptive(1e-14)?;
    let mut cases = Vec::new();
    for m in [1.0, 2.0, 3.0] {
        for db in GRID_SNR_DB {
            for order in GRID_ORDERS {
                cases.push((m, db, order));
            }
        }
    }
    fold(
        cases.into_iter().map(|(m, db, order)| {
            let ch = ChannelParams::from_db(m, db)?;
            let c1 = Modulation::<f64>::qam(order)?.c1();
            let series = r2_series(&ch, c1, &adaptive)?;
            if series.terms_used != m as usize || series.fell_back {
                return Ok(f64::INFINITY);
            }
            Ok(rel(series.value, r2_quadrature(&ch, c1, &spec)?))
        }),
        1e-8,
    )
}

fn sandwich() -> Result<Report> {
    let adaptive = TruncationPolicy::adaptive(1e-12)?;
    // Reported error is the worst violation (0 when every ordering holds).
    fold(
        grid().map(|(ch, md)| {
            let closed = aber_closed(&ch, &md, &adaptive)?;
            let lu = aber_lu_closed(&ch, &md)?;
            let violation = (closed - lu).max(closed - 0.5).max(-closed).max(0.0);
            Ok(if closed > 0.0 { violation } else { f64::INFINITY })
        }),
        1e-15,
    )
}

fn limits() -> Result<Report> {
    let ch = ChannelParams::new(1.0, 1e-10)?;
    let md = Modulation::qam(4)?;
    let closed = aber_closed(&ch, &md, &TruncationPolicy::fixed(5)?)?;
    let oracle = aber_oracle(&ch, &md, &BerKind::Exact, &tight()?)?.require_converged("limits")?;
    let lu = aber_lu_closed(&ch, &md)?;
    fold(
        [(closed - 0.4375).abs(), (oracle - 0.4375).abs(), (lu - 0.5).abs()]
            .into_iter()
            .map(Ok),
        1e-4,
    )
}

fn appell() -> Result<Report> {
    let v = appell_f1(1.0, 1.0, 1.0, 2.0, -1.0, -2.0)?;
    fold(std::iter::once(Ok(rel(v, 1.5f64.ln()))), 1e-10)
}
