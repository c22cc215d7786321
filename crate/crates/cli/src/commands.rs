//! Subcommand implementations. Each produces human-readable text, a JSON
//! value and a pass flag that decides the exit code.

use oresmooth::hopf::Bialgebra;
use oresmooth::morphisms::{check_nu_x_constraint, check_nu_y_constraint, classify};
use oresmooth::{Calculus, IntegralForm1, OneForm, OreElement, Report, TwoForm};
use serde_json::{json, Value as Json};

use crate::config::Resolved;
use crate::error::CliError;
use crate::parse::{parse_element, parse_one_form, parse_value, Context, Value};

pub struct Output {
    pub text: String,
    pub json: Json,
    pub pass: bool,
}

impl Output {
    fn computed(text: String, json: Json) -> Self {
        Output {
            text,
            json,
            pass: true,
        }
    }
}

pub fn element_json(e: &OreElement) -> Json {
    let terms: Vec<Json> = e
        .terms()
        .map(|(k, l, c)| json!({"k": k, "l": l, "coeff": c.to_string()}))
        .collect();
    json!({"terms": terms, "text": e.to_string()})
}

pub fn one_form_json(w: &OneForm) -> Json {
    json!({"dx": element_json(&w.a), "dy": element_json(&w.b), "text": w.to_string()})
}

pub fn two_form_json(w: &TwoForm) -> Json {
    json!({
        "volume": w.volume.to_string(),
        "coeff": element_json(&w.coeff),
        "text": w.to_string(),
    })
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Elem(e) => element_json(e),
        Value::Form1(w) => one_form_json(w),
        Value::Form2(w) => two_form_json(w),
    }
}

fn with_spec(ctx: &Context, mut body: Json) -> Json {
    body["spec"] = json!(ctx.algebra().spec().to_string());
    body
}

pub fn normalize(ctx: &Context, expr: &str) -> Result<Output, CliError> {
    let v = parse_value(ctx, expr)?;
    Ok(Output::computed(v.to_string(), with_spec(ctx, value_json(&v))))
}

pub fn differential(ctx: &Context, expr: &str) -> Result<Output, CliError> {
    let a = parse_element(ctx, expr)?;
    let w = ctx.calculus()?.differential(&a)?;
    Ok(Output::computed(w.to_string(), with_spec(ctx, one_form_json(&w))))
}

pub fn wedge(ctx: &Context, u: &str, v: &str) -> Result<Output, CliError> {
    let u = parse_one_form(ctx, u)?;
    let v = parse_one_form(ctx, v)?;
    let w = ctx.calculus()?.wedge(&u, &v)?;
    Ok(Output::computed(w.to_string(), with_spec(ctx, two_form_json(&w))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum NuMap {
    X,
    Y,
    XInv,
    YInv,
    Omega,
    OmegaInv,
}

pub fn apply_nu(ctx: &Context, map: NuMap, expr: &str) -> Result<Output, CliError> {
    let a = parse_element(ctx, expr)?;
    let calc = ctx.calculus()?;
    let pair = calc.nu_pair();
    let endo = match map {
        NuMap::X => &pair.nu_x,
        NuMap::Y => &pair.nu_y,
        NuMap::XInv => &pair.nu_x_inv,
        NuMap::YInv => &pair.nu_y_inv,
        NuMap::Omega => calc.volume_automorphism(),
        NuMap::OmegaInv => calc.volume_automorphism_inverse(),
    };
    let image = endo.apply(&a)?;
    Ok(Output::computed(image.to_string(), with_spec(ctx, element_json(&image))))
}

pub fn divergence(ctx: &Context, a: &str, b: Option<&str>) -> Result<Output, CliError> {
    let phi = IntegralForm1 {
        a: parse_element(ctx, a)?,
        b: match b {
            Some(b) => parse_element(ctx, b)?,
            None => ctx.algebra().zero(),
        },
    };
    let div = ctx.calculus()?.divergence(&phi)?;
    let mut body = element_json(&div);
    body["form"] = json!(phi.to_string());
    Ok(Output::computed(div.to_string(), with_spec(ctx, body)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckName {
    Admissible,
    DualBasis,
    KernelD,
    Divergence,
    Hopf,
}

fn report_output(report: Report) -> Result<Output, CliError> {
    let mut text = report.to_string();
    for child in &report.children {
        text.push_str(&format!("\n  {child}"));
    }
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output {
        text,
        pass: report.pass,
        json,
    })
}

pub fn check(ctx: &Context, resolved: &Resolved, name: CheckName) -> Result<Output, CliError> {
    let spec = ctx.algebra().spec();
    let bound = resolved.bound;
    match name {
        CheckName::Admissible => {
            let adm = classify(spec);
            let nu_x = check_nu_x_constraint(spec);
            let nu_y = check_nu_y_constraint(spec);
            let mut body = json!({
                "check": "admissible",
                "spec": spec.to_string(),
                "pass": adm.is_admissible(),
                "verdict": adm.verdict.to_string(),
                "nu_x_condition": nu_x,
                "nu_y_condition": nu_y,
            });
            let mut text = format!("{} {spec}", adm.verdict);
            if let Some(w) = &adm.witness {
                body["witness"] = json!(w.to_string());
                text.push_str(&format!(" (c = {w})"));
            }
            Ok(Output {
                text,
                json: body,
                pass: adm.is_admissible(),
            })
        }
        CheckName::Hopf => {
            let family = resolved
                .family
                .clone()
                .ok_or_else(|| CliError::Usage("check hopf needs --family a, b or c".into()))?;
            report_output(Bialgebra::new(family).smoothness_pipeline(bound)?)
        }
        CheckName::DualBasis | CheckName::KernelD | CheckName::Divergence => {
            let calc: &Calculus = match ctx.calculus() {
                Ok(c) => c,
                Err(CliError::Math(oresmooth::Error::NotAdmissibleSpec(msg))) => {
                    let check = match name {
                        CheckName::DualBasis => "dual-basis",
                        CheckName::KernelD => "kernel-d",
                        _ => "divergence",
                    };
                    let mut r = Report::new(check, spec, Some(bound));
                    r.fail(format!("{msg} is not admissible"));
                    return report_output(r);
                }
                Err(e) => return Err(e),
            };
            let report = match name {
                CheckName::DualBasis => calc.check_dual_basis(bound)?,
                CheckName::KernelD => calc.check_kernel_of_d(bound)?,
                _ => calc.check_divergence(bound)?,
            };
            report_output(report)
        }
    }
}
