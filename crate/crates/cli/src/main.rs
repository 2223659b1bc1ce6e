use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use bigmcg::classifier::{classify, ClassifierConfig};
use bigmcg::curve::{act_word, intersection_with_round, BraidWord, RoundCurve};
use bigmcg::end_space::{normalize, parse_surface_or_expr};
use bigmcg::fraisse::{
    check_class_property, check_pair_property, check_ultrahomogeneous, fraisse_chain, fraissefy, parse_class,
    parse_permutations, parse_structure_file, print_structure, ClassProperty, PairProperty, Ultrahomogeneity,
};
use bigmcg::mann_rafi::{end_equivalence_classes, maximal_ends};
use bigmcg::{Error, MultiCurve};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bigmcg", version, about = "Conjugacy-class verdicts for big mapping class groups, Fraisse classes and multicurves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a surface given as a file or an inline `genus = ..; ends = ..` expression.
    Classify {
        input: String,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// End-space normal forms and the Mann-Rafi order.
    Ends {
        #[arg(value_enum)]
        action: EndsAction,
        input: String,
    },
    #[command(subcommand)]
    Fraisse(FraisseCommand),
    #[command(subcommand)]
    Curves(CurvesCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum EndsAction {
    Normalize,
    Order,
    Maximal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Hp,
    Jep,
    Ap,
    Wap,
    LocalWap,
    JepFp,
    WapFp,
    LocalWapFp,
}

#[derive(Subcommand)]
enum FraisseCommand {
    /// Check a class property at the file's bounds.
    Check {
        classfile: String,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Build a bounded chain towards the limit.
    Chain {
        classfile: String,
        #[arg(long)]
        steps: usize,
    },
    /// Enrich a structure by orbit relations of the group its generators span.
    Fraissefy {
        structfile: String,
        #[arg(long)]
        generators: String,
    },
}

#[derive(Subcommand)]
enum CurvesCommand {
    /// Apply a braid word to a multicurve.
    Act {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        coords: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Print the twist word of a round curve, or twist a multicurve about it.
    Twist {
        #[arg(long)]
        round: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        coords: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
    },
    /// Geometric intersection number of a multicurve with a round curve.
    Intersect {
        #[arg(long)]
        round: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        coords: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::Validity(_) | Error::Format(_) | Error::IllFormedPair(_) => 2,
        Error::Resource(_) | Error::Overflow => 3,
        Error::Precondition(_) | Error::NotAutomorphism { .. } => 4,
    }
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {path}: {e}")))
}

fn is_inline(arg: &str) -> bool {
    !arg.contains(std::path::MAIN_SEPARATOR) && !arg.contains('/') && arg.contains('=')
}

/// Inline text or the contents of the named file; a bare word that names no
/// file is taken as inline text.
fn surface_text(arg: &str) -> Result<String, Error> {
    if is_inline(arg) {
        return Ok(arg.to_string());
    }
    if Path::new(arg).is_file() || arg.contains('/') || arg.contains(std::path::MAIN_SEPARATOR) {
        return read_file(arg);
    }
    Ok(arg.to_string())
}

fn coords(n: usize, text: &str) -> Result<MultiCurve, Error> {
    let text = if text.contains("n=") || text.contains("n =") { text.to_string() } else { format!("n={n}; {text}") };
    let l: MultiCurve = text.parse()?;
    if l.punctures() != n {
        return Err(Error::validity(format!("--n {n} disagrees with coordinates on {} punctures", l.punctures())));
    }
    Ok(l)
}

fn run(cli: Cli) -> Result<String, Error> {
    let mut out = String::new();
    match cli.command {
        Command::Classify { input, strict, format } => {
            let spec = parse_surface_or_expr(&surface_text(&input)?)?;
            let report = classify(&spec, ClassifierConfig { strict })?;
            out = match format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_record(),
            };
        }
        Command::Ends { action, input } => {
            let spec = parse_surface_or_expr(&surface_text(&input)?)?;
            out = match action {
                EndsAction::Normalize => normalize(&spec.ends)?.to_record(),
                EndsAction::Order => end_equivalence_classes(&spec)?.to_record(),
                EndsAction::Maximal => {
                    let (count, classes) = maximal_ends(&spec)?;
                    let mut s = format!("maximal_count: {count}\n");
                    for c in classes {
                        let _ = writeln!(s, "class: germ={} mark={:?} cardinality={}", c.germ, c.mark, c.cardinality);
                    }
                    s
                }
            };
        }
        Command::Fraisse(FraisseCommand::Check { classfile, property }) => {
            let class = parse_class(&read_file(&classfile)?)?;
            let outcome = match property {
                Property::Hp => check_class_property(&class, ClassProperty::Hp)?,
                Property::Jep => check_class_property(&class, ClassProperty::Jep)?,
                Property::Ap => check_class_property(&class, ClassProperty::Ap)?,
                Property::Wap => check_class_property(&class, ClassProperty::Wap)?,
                Property::LocalWap => check_class_property(&class, ClassProperty::LocalWap)?,
                Property::JepFp => check_pair_property(&class, PairProperty::JepFp)?,
                Property::WapFp => check_pair_property(&class, PairProperty::WapFp)?,
                Property::LocalWapFp => check_pair_property(&class, PairProperty::LocalWapFp)?,
            };
            let _ = writeln!(out, "{outcome}");
        }
        Command::Fraisse(FraisseCommand::Chain { classfile, steps }) => {
            let class = parse_class(&read_file(&classfile)?)?;
            let result = fraisse_chain(&class, steps)?;
            for (t, stage) in result.stages.iter().enumerate() {
                let _ = writeln!(out, "stage {t}: {stage}");
            }
            for (t, e) in result.embeddings.iter().enumerate() {
                let _ = writeln!(out, "embedding {t}: {e}");
            }
            for task in &result.tasks {
                let _ = writeln!(
                    out,
                    "task: stage={} base={:?} extension={} base_map={:?} new_point={} witness={}",
                    task.stage, task.base, task.extension, task.base_map, task.new_point, task.witness
                );
            }
            let _ = writeln!(out, "amalgamation: {}", result.amalgamation);
            let _ = writeln!(out, "pending_tasks: {}", result.pending_tasks);
        }
        Command::Fraisse(FraisseCommand::Fraissefy { structfile, generators }) => {
            let k = parse_structure_file(&read_file(&structfile)?)?;
            let gens = parse_permutations(&read_file(&generators)?)?;
            let (enriched, group) = fraissefy(&k, &gens)?;
            let _ = writeln!(out, "group_order: {}", group.len());
            for g in &group {
                let _ = writeln!(out, "element: {}", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            match check_ultrahomogeneous(&enriched)? {
                Ultrahomogeneity::Ultrahomogeneous => out.push_str("ultrahomogeneous: true\n"),
                Ultrahomogeneity::NotUltrahomogeneous { domain, image } => {
                    let _ = writeln!(out, "ultrahomogeneous: false {domain:?} -> {image:?}");
                }
            }
            out.push_str(&print_structure(&enriched));
        }
        Command::Curves(CurvesCommand::Act { n, coords: c, word }) => {
            let l = coords(n, &c)?;
            let w: BraidWord = word.parse()?;
            let _ = writeln!(out, "{}", act_word(&l, &w)?);
        }
        Command::Curves(CurvesCommand::Twist { round, n, coords: c, power }) => {
            let curve: RoundCurve = round.parse()?;
            let base = curve.twist_word();
            let word = if power >= 0 { base.pow(power as usize) } else { base.inverse().pow(power.unsigned_abs() as usize) };
            match (n, c) {
                (Some(n), Some(c)) => {
                    curve.fits(n)?;
                    let l = coords(n, &c)?;
                    let _ = writeln!(out, "{}", act_word(&l, &word)?);
                }
                (None, None) => {
                    let _ = writeln!(out, "{word}");
                }
                _ => return Err(Error::validity("--n and --coords go together")),
            }
        }
        Command::Curves(CurvesCommand::Intersect { round, n, coords: c }) => {
            let curve: RoundCurve = round.parse()?;
            curve.fits(n)?;
            let l = coords(n, &c)?;
            let _ = writeln!(out, "{}", intersection_with_round(&l, curve)?);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Syntax { line: 1, column: 1, message: String::new() }), 2);
        assert_eq!(exit_code(&Error::validity("x")), 2);
        assert_eq!(exit_code(&Error::IllFormedPair("x".into())), 2);
        assert_eq!(exit_code(&Error::Resource("x".into())), 3);
        assert_eq!(exit_code(&Error::Overflow), 3);
        assert_eq!(exit_code(&Error::Precondition("x".into())), 4);
        assert_eq!(exit_code(&Error::NotAutomorphism { index: 0, reason: String::new() }), 4);
    }

    #[test]
    fn inline_detection() {
        assert!(is_inline("genus = 0; ends = omega(pt)"));
        assert!(!is_inline("surfaces/flute.srf"));
        assert!(!is_inline("omega(pt)"));
        assert_eq!(surface_text("omega(pt)").unwrap(), "omega(pt)");
    }
}
