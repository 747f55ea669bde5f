//! `ptilde` — orbit semigroups, truncated characters, semi-invariant
//! verification, and highest-weight module checks for parabolic contractions
//! r ⋉ mᵃ of simple Lie algebras.
//!
//! Exit codes: 0 success/confirmed, 1 usage error, 2 incomplete verification
//! or resource ceiling, 3 internal consistency failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ptilde::error::{Error, ErrorKind};
use ptilde::parse::{parse_pi_prime, parse_type, parse_weight};
use ptilde::pipeline;
use ptilde::rootsys::SimpleType;
use ptilde::selftest;

#[derive(Parser)]
#[command(
    name = "ptilde",
    version,
    about = "Computations for parabolic contractions r ⋉ mᵃ of simple Lie algebras: \
             orbit semigroups, lower-bound characters, semi-invariant verification, \
             and highest-weight module checks.",
    after_help = "Simple types use Bourbaki labels (A1..G2).  π′ is given as \
                  1-based comma-separated simple-root indices; an empty list is \
                  the Borel case.  Highest weights are comma-separated integer \
                  fundamental coordinates."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CaseArgs {
    /// Simple type, e.g. A2, B3, G2
    #[arg(long = "type")]
    stype: String,
    /// 1-based simple-root indices of π′, e.g. "1,3"; empty for the Borel
    #[arg(long, default_value = "")]
    pi_prime: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root system and parabolic split, with exhaustive bracket checks
    Describe {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Orbits of the twist involution, generators d_Γ and weights δ_Γ,
    /// two-sided semigroup checks
    Orbits {
        #[command(flatten)]
        case: CaseArgs,
        /// Check every dominant weight of degree ≤ this bound
        #[arg(long, default_value_t = 12)]
        trunc: i64,
        /// Also run a seeded randomized spot-check beyond the window
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The truncated product character ∏_Γ (1 − e^{δ_Γ})⁻¹
    LowerBound {
        #[command(flatten)]
        case: CaseArgs,
        /// Truncation degree of the character window
        #[arg(long, default_value_t = 8)]
        trunc: i64,
    },
    /// Verify that the product character bounds the semi-invariant character
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        /// Truncation degree of the character window
        #[arg(long, default_value_t = 8)]
        trunc: i64,
        /// Polynomial-degree ceiling for the semi-invariant search
        #[arg(long = "max-degree", default_value_t = 8)]
        max_degree: usize,
    },
    /// Build V(λ) and run filtration, annihilator, graded-identity, and
    /// matrix-coefficient invariant checks
    Hwmod {
        #[command(flatten)]
        case: CaseArgs,
        /// Highest weight λ, comma-separated fundamental coordinates
        #[arg(long)]
        lambda: String,
        /// Refuse modules larger than this
        #[arg(long = "dim-ceiling", default_value_t = 200)]
        dim_ceiling: u64,
    },
    /// Run the eight acceptance criteria
    Selftest {
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn exit_for(e: &Error) -> ExitCode {
    match e.kind() {
        ErrorKind::Config | ErrorKind::Domain => ExitCode::from(1),
        ErrorKind::Resource => ExitCode::from(2),
        ErrorKind::Internal => ExitCode::from(3),
    }
}

fn parse_case(case: &CaseArgs) -> Result<(SimpleType, Vec<usize>), Error> {
    let stype = parse_type(&case.stype)?;
    let sub = parse_pi_prime(&case.pi_prime, stype.rank)?;
    Ok((stype, sub))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialization");
    s.push('\n');
    s
}

fn set_text(v: &[usize]) -> String {
    if v.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        )
    }
}

fn tuple_text(coords: &[String]) -> String {
    format!("({})", coords.join(", "))
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_describe(case: &CaseArgs) -> Result<(String, ExitCode), Error> {
    let (stype, sub) = parse_case(case)?;
    let rep = pipeline::describe_report(stype, &sub)?;
    let out = match case.format {
        Format::Json => json(&rep),
        Format::Text => format!(
            "type {}, rank {}, {} positive roots\n\
             π′ = {} (1-based)\n\
             dim g = {}, dim r = {}, dim m = {}, dim p = {}\n\
             coadjoint morphism: {}; pairing intertwiner: {}; pairing nondegenerate: {}\n",
            rep.r#type,
            rep.rank,
            rep.num_positive_roots,
            set_text(&rep.pi_prime),
            rep.dim_g,
            rep.dim_levi,
            rep.dim_m,
            rep.dim_p,
            yesno(rep.coadjoint_morphism),
            yesno(rep.killing_intertwiner),
            yesno(rep.pairing_nondegenerate),
        ),
    };
    let ok = rep.coadjoint_morphism && rep.killing_intertwiner && rep.pairing_nondegenerate;
    Ok((out, if ok { ExitCode::SUCCESS } else { ExitCode::from(3) }))
}

fn cmd_orbits(case: &CaseArgs, trunc: i64, seed: Option<u64>) -> Result<(String, ExitCode), Error> {
    let (stype, sub) = parse_case(case)?;
    let rep = pipeline::orbit_report(stype, &sub, trunc, seed)?;
    let mut ok = rep.free_generation.confirmed;
    if let Some(rc) = &rep.random_check {
        ok &= rc.confirmed;
    }
    let out = match case.format {
        Format::Json => json(&rep),
        Format::Text => {
            let mut s = format!("type {}, π′ = {}\n", rep.r#type, set_text(&rep.pi_prime));
            for e in &rep.orbits {
                s += &format!(
                    "orbit {}: d = {} (simple-root coords {}), δ = {} (simple-root coords {}), deg δ = {}\n",
                    set_text(&e.orbit),
                    tuple_text(&e.d_fundamental),
                    tuple_text(&e.d_simple_roots),
                    tuple_text(&e.delta_fundamental),
                    tuple_text(&e.delta_simple_roots),
                    e.delta_degree,
                );
            }
            let fg = &rep.free_generation;
            s += &format!(
                "free generation: {} dominant weights of degree ≤ {} ({} members) checked two-sidedly: {}\n",
                fg.weights_checked,
                fg.max_degree,
                fg.members,
                if fg.confirmed { "confirmed" } else { "REFUTED" },
            );
            if let Some(rc) = &rep.random_check {
                s += &format!(
                    "random spot-check (seed {}, {} samples, coordinates ≤ {}): {}\n",
                    rc.seed,
                    rc.samples,
                    rc.max_coordinate,
                    if rc.confirmed { "confirmed" } else { "REFUTED" },
                );
            }
            s
        }
    };
    Ok((out, if ok { ExitCode::SUCCESS } else { ExitCode::from(3) }))
}

fn cmd_lower_bound(case: &CaseArgs, trunc: i64) -> Result<(String, ExitCode), Error> {
    let (stype, sub) = parse_case(case)?;
    let rep = pipeline::character_report(stype, &sub, trunc)?;
    let out = match case.format {
        Format::Json => json(&rep),
        Format::Text => {
            let mut s = format!(
                "∏_Γ (1 − e^{{δ_Γ}})⁻¹ for {} / π′ = {}, truncated at degree {}: {} terms\n",
                rep.r#type,
                set_text(&rep.pi_prime),
                rep.trunc,
                rep.entries.len()
            );
            for e in &rep.entries {
                s += &format!("  {}: {}\n", tuple_text(&e.weight), e.coefficient);
            }
            s
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_verify(case: &CaseArgs, trunc: i64, max_degree: usize) -> Result<(String, ExitCode), Error> {
    let (stype, sub) = parse_case(case)?;
    let rep = pipeline::verify_report(stype, &sub, trunc, max_degree)?;
    let confirmed = rep.confirmed;
    let out = match case.format {
        Format::Json => json(&rep),
        Format::Text => {
            let mut s = format!(
                "verification window for {} / π′ = {}: weight degree ≤ {}, polynomial degree ≤ {}\n",
                rep.r#type,
                set_text(&rep.pi_prime),
                rep.trunc,
                rep.poly_ceiling
            );
            for st in &rep.statuses {
                let contrib = st
                    .contributions
                    .iter()
                    .map(|(k, n)| format!("{n} at degree {k}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                s += &format!(
                    "  weight {} (deg {}): required {}, found {} [{}] — {}\n",
                    tuple_text(&st.weight),
                    st.degree,
                    st.required,
                    st.found,
                    if contrib.is_empty() { "none".to_string() } else { contrib },
                    if st.confirmed { "confirmed" } else { "INCOMPLETE" },
                );
            }
            s += &format!(
                "overall: {}\n",
                if confirmed { "confirmed" } else { "incomplete" }
            );
            s
        }
    };
    Ok((
        out,
        if confirmed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        },
    ))
}

fn cmd_hwmod(case: &CaseArgs, lambda: &str, dim_ceiling: u64) -> Result<(String, ExitCode), Error> {
    let (stype, sub) = parse_case(case)?;
    let lam = parse_weight(lambda, stype.rank)?;
    let rep = pipeline::hwmod_report(stype, &sub, &lam, dim_ceiling)?;
    let consistent = rep.consistent;
    let out = match case.format {
        Format::Json => json(&rep),
        Format::Text => {
            let mut s = format!(
                "V(λ) for {} / π′ = {}, λ = {}: dim {}, {} weights\n",
                rep.r#type,
                set_text(&rep.pi_prime),
                tuple_text(&rep.lambda),
                rep.dim,
                rep.weight_dims.len()
            );
            s += &format!(
                "filtration graded dims {:?} (complete: {})\n",
                rep.graded_dims,
                yesno(rep.filtration_complete)
            );
            s += &format!(
                "m-annihilator equals V′: {}; ordered monomials span each level: {}\n",
                yesno(rep.annihilator_ok),
                yesno(rep.graded_identity_ok)
            );
            let blocks = rep
                .invariant_blocks
                .iter()
                .map(|(w, d)| format!("{} (dim {d})", tuple_text(w)))
                .collect::<Vec<_>>()
                .join(", ");
            s += &format!(
                "matrix-coefficient invariants: dim {}{}; λ ∈ 𝒟: {}; consistent: {}\n",
                rep.invariant_dim,
                if blocks.is_empty() { String::new() } else { format!(" at {blocks}") },
                yesno(rep.in_semigroup),
                yesno(consistent),
            );
            s
        }
    };
    Ok((
        out,
        if consistent {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(3)
        },
    ))
}

fn cmd_selftest(format: Format) -> Result<(String, ExitCode), Error> {
    let runs = selftest::run_all();
    let rep = selftest::to_report(&runs);
    let out = match format {
        Format::Json => json(&rep),
        Format::Text => {
            let mut s = String::new();
            for r in &runs {
                s += &format!(
                    "[{}] criterion {}: {} ({} ms) — {}\n",
                    if r.report.passed { "PASS" } else { "FAIL" },
                    r.report.id,
                    r.report.name,
                    r.elapsed_ms,
                    r.report.details
                );
            }
            s += &format!(
                "{}\n",
                if rep.all_passed {
                    "all criteria passed"
                } else {
                    "SOME CRITERIA FAILED"
                }
            );
            s
        }
    };
    Ok((
        out,
        if rep.all_passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(3)
        },
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as CK;
            let code = match e.kind() {
                CK::DisplayHelp | CK::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
            let _ = e.print();
            return code;
        }
    };
    let res = match &cli.cmd {
        Cmd::Describe { case } => cmd_describe(case),
        Cmd::Orbits { case, trunc, seed } => cmd_orbits(case, *trunc, *seed),
        Cmd::LowerBound { case, trunc } => cmd_lower_bound(case, *trunc),
        Cmd::Verify {
            case,
            trunc,
            max_degree,
        } => cmd_verify(case, *trunc, *max_degree),
        Cmd::Hwmod {
            case,
            lambda,
            dim_ceiling,
        } => cmd_hwmod(case, lambda, *dim_ceiling),
        Cmd::Selftest { format } => cmd_selftest(*format),
    };
    match res {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
