//! Subcommand execution. Every argument is parsed and validated before any
//! computation starts.

use fraclap::bilaplacian::{self, bilap_green, DeltaPerturbation};
use fraclap::green_hardy::{
    admissibility_threshold, c_alpha, g_n, g_n_upper_bound, green_entry, i_n_closed, i_n_quadrature,
    power_weight_coupling, theorem2_check, theorem3_weight, uniform_bound_refined, uniform_bound_rough, Decay,
    GreenQuery, Potential,
};
use fraclap::operator::{assemble, assemble_reflected, entry, Exponent};
use fraclap::quadrature;
use fraclap::selftest;
use fraclap::spectral_probe::{
    criticality_scan, hardy_witness, kpp_witness, min_eig, potential_witness, reflected_witness, ScanReport, Verdict,
    WitnessReport,
};
use num_complex::Complex64;
use serde_json::json;

use crate::grid::{parse_indices, parse_reals};
use crate::output::{Cell, Output, Table};
use crate::{CliError, Command, PotentialArgs, PotentialKind};

pub const DEFAULT_SCHEDULE: &str = "250,500,1000,2000,4000";

pub fn name(c: &Command) -> &'static str {
    match c {
        Command::Entry { .. } => "entry",
        Command::Matrix { .. } => "matrix",
        Command::Green { .. } => "green",
        Command::Gn { .. } => "gn",
        Command::In { .. } => "in",
        Command::Bounds { .. } => "bounds",
        Command::HardyCheck { .. } => "hardy-check",
        Command::HardyWeight { .. } => "hardy-weight",
        Command::BilapGreen { .. } => "bilap-green",
        Command::BilapLambda { .. } => "bilap-lambda",
        Command::ProbeMinEig { .. } => "probe-min-eig",
        Command::ProbeCritical { .. } => "probe-critical",
        Command::ProbeHardy { .. } => "probe-hardy",
        Command::ProbeReflected { .. } => "probe-reflected",
        Command::ProbeKpp { .. } => "probe-kpp",
        Command::Selftest => "selftest",
    }
}

type Outcome = Result<(Output, bool), CliError>;

fn done(output: Output) -> Outcome {
    Ok((output, true))
}

fn positive_tol(tol: Option<f64>, default: f64) -> Result<f64, CliError> {
    match tol {
        None => Ok(default),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(format!("--tol must be positive, got {t}").into()),
    }
}

fn schedule(spec: &str) -> Result<Vec<usize>, CliError> {
    let sizes = parse_indices(spec)?;
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("--schedule must be strictly increasing, got `{spec}`").into());
    }
    Ok(sizes.into_iter().map(|n| n as usize).collect())
}

fn alphas(spec: &str) -> Result<Vec<f64>, CliError> {
    let values = parse_reals(spec)?;
    for &a in &values {
        Exponent::new(a)?;
    }
    Ok(values)
}

fn potential(alpha: f64, p: &PotentialArgs) -> Result<Potential, CliError> {
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--potential needs --{flag}")));
    Ok(match p.potential {
        PotentialKind::Zero => Potential::zero(),
        PotentialKind::Hardy => Potential::ClassicalHardy,
        PotentialKind::Kpp => Potential::Kpp,
        PotentialKind::Delta => {
            let site = p
                .site
                .ok_or_else(|| CliError::Usage("--potential delta needs --site".into()))?;
            Potential::delta(site, need(p.c, "c")?)?
        }
        PotentialKind::Power => theorem3_weight(alpha, need(p.epsilon, "epsilon")?)?,
        PotentialKind::Explicit => {
            let spec = p
                .values
                .as_deref()
                .ok_or_else(|| CliError::Usage("--potential explicit needs --values".into()))?;
            let values = parse_reals(spec)?;
            let decay = match p.decay.as_deref() {
                None => None,
                Some("finite") => Some(Decay::FiniteSupport),
                Some(s) => {
                    let parts: Vec<&str> = s.split(':').collect();
                    match parts[..] {
                        ["power", k, e] => Some(Decay::Power {
                            coeff: k.parse().map_err(|_| format!("bad decay coefficient `{k}`"))?,
                            exponent: e.parse().map_err(|_| format!("bad decay exponent `{e}`"))?,
                        }),
                        _ => return Err(format!("--decay must be `finite` or `power:K:p`, got `{s}`").into()),
                    }
                }
            };
            Potential::explicit(values, decay)?
        }
    })
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Entry { alpha, m, n } => {
            let (alphas, ms, ns) = (alphas(&alpha)?, parse_indices(&m)?, parse_indices(&n)?);
            let mut t = Table::new(vec!["alpha", "m", "n", "entry"]).with_primary("entry");
            for &a in &alphas {
                for &i in &ms {
                    for &j in &ns {
                        t.push(vec![a.into(), i.into(), j.into(), entry(a, i, j)?.into()]);
                    }
                }
            }
            done(Output::Table(t))
        }
        Command::Matrix { alpha, size, reflected } => {
            if size == 0 {
                return Err("--N must be at least 1".to_string().into());
            }
            let op = if reflected {
                assemble_reflected(alpha, size)?
            } else {
                assemble(alpha, size)?
            };
            done(Output::Matrix {
                alpha,
                matrix: op.into_matrix(),
            })
        }
        Command::Green {
            alpha,
            m,
            n,
            lambda,
            tol,
        } => {
            let tol = positive_tol(tol, quadrature::DEFAULT_TOL)?;
            let (alphas, lambdas) = (alphas(&alpha)?, parse_reals(&lambda)?);
            let (ms, ns) = (parse_indices(&m)?, parse_indices(&n)?);
            let mut queries = Vec::new();
            for &a in &alphas {
                for &l in &lambdas {
                    for &i in &ms {
                        for &j in &ns {
                            queries.push(GreenQuery::new(a, i, j, l)?);
                        }
                    }
                }
            }
            let mut t = Table::new(vec!["alpha", "lambda", "m", "n", "green_value"]).with_primary("green_value");
            for q in queries {
                let g = green_entry(&q, tol)?;
                t.push(vec![q.alpha.into(), q.lambda.into(), q.m.into(), q.n.into(), g.into()]);
            }
            done(Output::Table(t))
        }
        Command::Gn { alpha, n } => {
            let (alphas, ns) = (parse_reals(&alpha)?, parse_indices(&n)?);
            let mut t = Table::new(vec!["alpha", "n", "g_n", "bound", "I_n"]).with_primary("g_n");
            for &a in &alphas {
                for &k in &ns {
                    let row = vec![
                        a.into(),
                        k.into(),
                        g_n(a, k)?.into(),
                        g_n_upper_bound(a, k)?.into(),
                        i_n_closed(a, k)?.into(),
                    ];
                    t.push(row);
                }
            }
            done(Output::Table(t))
        }
        Command::In { alpha, n, tol } => {
            let tol = positive_tol(tol, quadrature::DEFAULT_TOL)?;
            let (alphas, ns) = (parse_reals(&alpha)?, parse_indices(&n)?);
            let mut t = Table::new(vec!["alpha", "n", "I_n", "I_n_quadrature", "difference"]).with_primary("I_n");
            for &a in &alphas {
                for &k in &ns {
                    let closed = i_n_closed(a, k)?;
                    let quad = i_n_quadrature(a, k, tol)?;
                    t.push(vec![
                        a.into(),
                        k.into(),
                        closed.into(),
                        quad.into(),
                        (closed - quad).into(),
                    ]);
                }
            }
            done(Output::Table(t))
        }
        Command::Bounds { alpha, m, n } => {
            let (alphas, ms, ns) = (parse_reals(&alpha)?, parse_indices(&m)?, parse_indices(&n)?);
            let mut t = Table::new(vec!["alpha", "m", "n", "c_alpha", "rough", "refined"]);
            for &a in &alphas {
                let c = c_alpha(a)?;
                for &i in &ms {
                    for &j in &ns {
                        let row = vec![
                            a.into(),
                            i.into(),
                            j.into(),
                            c.into(),
                            uniform_bound_rough(a, i, j)?.into(),
                            uniform_bound_refined(a, i, j)?.into(),
                        ];
                        t.push(row);
                    }
                }
            }
            done(Output::Table(t))
        }
        Command::HardyCheck {
            alpha,
            potential: p,
            terms,
        } => {
            let v = potential(alpha, &p)?;
            let r = theorem2_check(alpha, &v, terms)?;
            let mut t = Table::new(vec![
                "alpha",
                "potential",
                "decision",
                "partial_sum",
                "tail_bound",
                "threshold",
                "terms",
                "note",
            ])
            .with_primary("decision");
            let decision = serde_json::to_value(r.decision).expect("decision serializes");
            t.push(vec![
                r.alpha.into(),
                r.potential.clone().into(),
                decision.as_str().unwrap_or_default().into(),
                r.partial_sum.into(),
                r.tail_bound.into(),
                r.threshold.into(),
                r.terms.into(),
                r.note.clone().unwrap_or_default().into(),
            ]);
            let json = serde_json::to_value(&r).expect("report serializes");
            done(Output::Report { json, table: t })
        }
        Command::HardyWeight { alpha, epsilon } => {
            let (alphas, epsilons) = (parse_reals(&alpha)?, parse_reals(&epsilon)?);
            let mut t = Table::new(vec!["alpha", "epsilon", "gamma", "exponent", "threshold"]).with_primary("gamma");
            for &a in &alphas {
                for &e in &epsilons {
                    let row = vec![
                        a.into(),
                        e.into(),
                        power_weight_coupling(a, e)?.into(),
                        ((2.0 * a).max(1.0) + e).into(),
                        admissibility_threshold(a)?.into(),
                    ];
                    t.push(row);
                }
            }
            done(Output::Table(t))
        }
        Command::BilapGreen {
            m,
            n,
            lambda,
            lambda_im,
        } => {
            let (ms, ns, lambdas) = (parse_indices(&m)?, parse_indices(&n)?, parse_reals(&lambda)?);
            let points: Vec<Complex64> = lambdas.iter().map(|&re| Complex64::new(re, lambda_im)).collect();
            for z in &points {
                bilaplacian::joukowski_pair(*z)?;
            }
            let mut t = Table::new(vec!["lambda_re", "lambda_im", "m", "n", "green_re", "green_im"]);
            if lambda_im == 0.0 {
                t = t.with_primary("green_re");
            }
            for z in points {
                for &i in &ms {
                    for &j in &ns {
                        let g = bilap_green(i, j, z)?;
                        t.push(vec![
                            z.re.into(),
                            z.im.into(),
                            i.into(),
                            j.into(),
                            g.re.into(),
                            g.im.into(),
                        ]);
                    }
                }
            }
            done(Output::Table(t))
        }
        Command::BilapLambda { n, c, tol } => {
            let tol = positive_tol(tol, bilaplacian::DEFAULT_TOL)?;
            let (ns, cs) = (parse_indices(&n)?, parse_reals(&c)?);
            let mut perturbations = Vec::new();
            for &k in &ns {
                for &cc in &cs {
                    perturbations.push(DeltaPerturbation::new(k, cc)?);
                }
            }
            let mut t = Table::new(vec![
                "n",
                "c",
                "lambda_implicit",
                "lambda_closed_or_nan",
                "lambda_asym_small",
                "lambda_asym_large",
                "bs_residual",
            ])
            .with_primary("lambda_implicit");
            for p in perturbations {
                let r = bilaplacian::sweep_row(&p, tol)?;
                t.push(vec![
                    r.n.into(),
                    r.c.into(),
                    r.lambda_implicit.into(),
                    r.lambda_closed_or_nan.into(),
                    r.lambda_asym_small.into(),
                    r.lambda_asym_large.into(),
                    r.bs_residual.into(),
                ]);
            }
            done(Output::Table(t))
        }
        Command::ProbeMinEig {
            alpha,
            size,
            potential: p,
        } => {
            Exponent::new(alpha)?;
            let v = potential(alpha, &p)?;
            let r = min_eig(alpha, size, &v)?;
            let mut t = Table::new(vec![
                "alpha",
                "N",
                "potential",
                "min_eigenvalue",
                "converged",
                "residual",
            ])
            .with_primary("min_eigenvalue");
            t.push(vec![
                r.alpha.into(),
                r.size.into(),
                r.potential.clone().into(),
                r.min_eigenvalue.into(),
                r.converged.into(),
                r.residual.into(),
            ]);
            let json = serde_json::to_value(&r).expect("report serializes");
            done(Output::Report { json, table: t })
        }
        Command::ProbeCritical {
            alpha,
            site,
            c,
            schedule: s,
        } => {
            Exponent::new(alpha)?;
            let couplings = parse_reals(&c)?;
            let sizes = schedule(&s)?;
            for &cc in &couplings {
                Potential::delta(site, cc)?;
            }
            let reports = criticality_scan(alpha, site, &couplings, &sizes)?;
            done(scan_output(&reports))
        }
        Command::ProbeHardy {
            alpha,
            epsilon,
            classical,
            schedule: s,
        } => {
            let sizes = schedule(&s)?;
            let report = if classical {
                if alpha != 1.0 {
                    return Err("--classical compares -Δ with 1/(4n²); use --alpha 1".to_string().into());
                }
                potential_witness(1.0, &Potential::ClassicalHardy, &sizes)?
            } else {
                let e = epsilon.ok_or_else(|| CliError::Usage("probe-hardy needs --epsilon or --classical".into()))?;
                theorem3_weight(alpha, e)?;
                hardy_witness(alpha, e, &sizes)?
            };
            done(witness_output(&report))
        }
        Command::ProbeReflected {
            alpha,
            c,
            site,
            schedule: s,
        } => {
            Exponent::new(alpha)?;
            let sizes = schedule(&s)?;
            Potential::delta(site, c)?;
            done(witness_output(&reflected_witness(alpha, c, site, &sizes)?))
        }
        Command::ProbeKpp { schedule: s } => {
            let sizes = schedule(&s)?;
            done(witness_output(&kpp_witness(&sizes)?))
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let passed = results.iter().all(|r| r.passed);
            let mut t = Table::new(vec!["suite", "description", "checks", "worst", "tolerance", "passed"]);
            for r in &results {
                t.push(vec![
                    r.suite.into(),
                    r.description.into(),
                    r.checks.into(),
                    r.worst.into(),
                    r.tolerance.into(),
                    (if r.passed { "pass" } else { "FAIL" }).into(),
                ]);
            }
            let json = json!({ "suites": results, "passed": passed });
            Ok((Output::Report { json, table: t }, passed))
        }
    }
}

fn verdict_text(v: &Verdict) -> Cell {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_string))
        .unwrap_or_default()
        .into()
}

fn scan_output(reports: &[ScanReport]) -> Output {
    let mut t = Table::new(vec![
        "alpha",
        "potential",
        "N",
        "min_eig",
        "residual",
        "extrapolated_limit",
        "extrapolated_error",
        "verdict",
    ]);
    for r in reports {
        for p in &r.schedule {
            t.push(vec![
                r.alpha.into(),
                r.potential.clone().into(),
                p.size.into(),
                p.min_eig.into(),
                p.residual.into(),
                r.extrapolated.limit.into(),
                r.extrapolated.error_bar.into(),
                verdict_text(&r.verdict),
            ]);
        }
    }
    Output::Report {
        json: json!({ "scans": reports }),
        table: t,
    }
}

fn witness_output(r: &WitnessReport) -> Output {
    let mut t = Table::new(vec![
        "alpha",
        "potential",
        "N",
        "min_eig",
        "residual",
        "tolerance",
        "holds",
    ]);
    for p in &r.schedule {
        t.push(vec![
            r.alpha.into(),
            r.potential.clone().into(),
            p.size.into(),
            p.min_eig.into(),
            p.residual.into(),
            r.tolerance.into(),
            r.holds.into(),
        ]);
    }
    Output::Report {
        json: serde_json::to_value(r).expect("report serializes"),
        table: t,
    }
}
