use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcdmss::analysis::security_report;
use lcdmss::codes::random_lcd_code;
use lcdmss::io_formats::{
    load, read_code, read_secret, read_shares, save, write_code, write_deal_record, write_secret,
    write_shares, FormatError, ShareSet,
};
use lcdmss::scheme::{check_code, deal, recover_with_transcript, verify_share};
use lcdmss::{LinearCode, RVector, Ring, Secret, Share};

/// Multi-secret sharing over LCD codes on Z/p^eZ.
#[derive(Parser)]
#[command(name = "lcdmss", version)]
struct Cli {
    /// Print intermediate values to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random LCD code and write it to a .code file.
    GenCode {
        /// Ring Z/p^eZ, written "p^e" or "p".
        #[arg(long)]
        ring: Ring,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        overwrite: bool,
    },
    /// Validate a .code file and test whether the code is LCD.
    Check {
        #[arg(long)]
        code: PathBuf,
    },
    /// Deal shares of a secret and write them to a .shares file.
    Deal {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        secret: SecretSource,
        /// Accept --secret even though it ends up in shell history.
        #[arg(long, requires = "secret")]
        allow_inline_secret: bool,
        /// Number of participants.
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the coefficient vectors and seed to this .dealrec file.
        #[arg(long)]
        deal_record: Option<PathBuf>,
        #[arg(long)]
        overwrite: bool,
    },
    /// Recover the secret from shares and write it to a .secret file.
    Recover {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        shares: PathBuf,
        /// Use only these participant ids, in this order.
        #[arg(long, value_delimiter = ',')]
        ids: Option<Vec<u32>>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        overwrite: bool,
    },
    /// Security figures for parameters n, k, alphabet size q and coalition size t.
    Analyze {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        t: u32,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check every share against a known secret.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        shares: PathBuf,
        #[arg(long)]
        secret: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SecretSource {
    /// Comma-separated residues. Requires --allow-inline-secret.
    #[arg(long)]
    secret: Option<String>,
    /// Read the secret from a .secret file.
    #[arg(long)]
    secret_file: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl Display) -> Self {
        Failure::Domain(e.to_string())
    }

    fn validation(msg: impl Display) -> Self {
        Failure::Domain(format!("ValidationError: {msg}"))
    }

    fn io(path: &Path, e: FormatError) -> Self {
        match e {
            FormatError::Io(e) => Failure::Domain(format!("IoError: {}: {e}", path.display())),
            other => Failure::Domain(format!("{other} (in {})", path.display())),
        }
    }
}

fn remedy(message: &str) -> &'static str {
    let name = message.split(':').next().unwrap_or_default();
    match name {
        "NotLcd" => "use a code whose stacked matrix (G; H) is invertible, e.g. one from gen-code",
        "NotEnoughIndependentShares" => {
            "supply more shares, or shares whose codewords are linearly independent"
        }
        "InvalidShare" => "that share file entry is corrupted; obtain a fresh copy of the share",
        "InternalSingular" => {
            "the shares or the code are corrupted; run verify against a known secret"
        }
        "ValidationError" => "fix the reported field or regenerate the file with this tool",
        "ParseError" => "the file is not in the expected format; regenerate it with this tool",
        "IoError" => "check the path; pass --overwrite to replace an existing output file",
        "GenerationFailed" => "try another seed or a larger ring",
        "VerificationFailed" => {
            "the listed shares do not match this secret; discard or re-deal them"
        }
        _ => "check the command arguments against --help",
    }
}

fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    let text = load(path).map_err(|e| Failure::io(path, e))?;
    read_code(&text).map_err(|e| Failure::io(path, e))
}

fn load_shares(path: &Path, code: &LinearCode) -> Result<ShareSet, Failure> {
    let text = load(path).map_err(|e| Failure::io(path, e))?;
    let set = read_shares(&text).map_err(|e| Failure::io(path, e))?;
    if set.ring != code.ring() || set.n != code.length() {
        return Err(Failure::validation(format!(
            "shares are over {} with n = {}, the code is over {} with n = {}",
            set.ring,
            set.n,
            code.ring(),
            code.length()
        )));
    }
    Ok(set)
}

fn load_secret(path: &Path, code: &LinearCode) -> Result<Secret, Failure> {
    let text = load(path).map_err(|e| Failure::io(path, e))?;
    let secret = read_secret(&text).map_err(|e| Failure::io(path, e))?;
    check_secret(&secret, code)?;
    Ok(secret)
}

fn check_secret(secret: &Secret, code: &LinearCode) -> Result<(), Failure> {
    if secret.ring() != code.ring() || secret.len() != code.length() {
        return Err(Failure::validation(format!(
            "secret has {} entries over {}, the code needs {} over {}",
            secret.len(),
            secret.ring(),
            code.length(),
            code.ring()
        )));
    }
    Ok(())
}

fn parse_inline_secret(text: &str, code: &LinearCode) -> Result<Secret, Failure> {
    let values = text
        .split(',')
        .map(|v| v.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            Failure::Usage(format!(
                "--secret must be comma-separated residues, got {text:?}"
            ))
        })?;
    let vector = RVector::from_canonical(code.ring(), &values).map_err(Failure::validation)?;
    let secret = Secret::new(vector);
    check_secret(&secret, code)?;
    Ok(secret)
}

fn ensure_writable(paths: &[&Path], overwrite: bool) -> Result<(), Failure> {
    if overwrite {
        return Ok(());
    }
    match paths.iter().find(|p| p.exists()) {
        Some(p) => Err(Failure::Domain(format!(
            "IoError: {} already exists",
            p.display()
        ))),
        None => Ok(()),
    }
}

fn write(path: &Path, contents: &str, overwrite: bool) -> Result<(), Failure> {
    save(path, contents, overwrite).map_err(|e| Failure::io(path, e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::GenCode {
            ring,
            n,
            k,
            seed,
            out,
            overwrite,
        } => {
            ensure_writable(&[&out], overwrite)?;
            let code = random_lcd_code(ring, n, k, seed).map_err(Failure::domain)?;
            write(&out, &write_code(&code), overwrite)?;
            if cli.verbose {
                eprintln!("G = {:?}", code.generator().row_values());
                eprintln!("H = {:?}", code.parity_check().row_values());
            }
            println!(
                "LCD [{n},{k}] code over Z/{}Z (ring {ring}, seed {seed}) written to {}",
                ring.modulus(),
                out.display()
            );
        }
        Command::Check { code } => {
            let c = load_code(&code)?;
            if !c.is_lcd() {
                return Err(Failure::domain(lcdmss::scheme::SchemeError::NotLcd));
            }
            println!(
                "{}: [{},{}] code over {}; G and H full row rank, GH^T = 0, LCD",
                code.display(),
                c.length(),
                c.dimension(),
                c.ring()
            );
            if 2 * c.dimension() < c.length() {
                println!("note: sharing needs 2k >= n, this code has k < n/2");
            }
        }
        Command::Deal {
            code,
            secret,
            allow_inline_secret,
            count,
            seed,
            out,
            deal_record,
            overwrite,
        } => {
            let c = load_code(&code)?;
            let s = match (&secret.secret, &secret.secret_file) {
                (Some(inline), _) => {
                    if !allow_inline_secret {
                        return Err(Failure::Usage(
                            "an inline --secret is recorded in shell history; \
                             pass --allow-inline-secret or use --secret-file"
                                .into(),
                        ));
                    }
                    parse_inline_secret(inline, &c)?
                }
                (None, Some(path)) => load_secret(path, &c)?,
                (None, None) => unreachable!("clap requires one secret source"),
            };
            if count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            let mut outputs = vec![out.as_path()];
            outputs.extend(deal_record.as_deref());
            ensure_writable(&outputs, overwrite)?;
            check_code(&c).map_err(Failure::domain)?;
            let (shares, record) = deal(&c, &s, count, seed).map_err(Failure::domain)?;
            write(
                &out,
                &write_shares(c.ring(), c.length(), &shares),
                overwrite,
            )?;
            if let Some(path) = &deal_record {
                write(path, &write_deal_record(&c, &record), overwrite)?;
            }
            println!("{count} shares written to {} (seed {seed})", out.display());
        }
        Command::Recover {
            code,
            shares,
            ids,
            out,
            overwrite,
        } => {
            let c = load_code(&code)?;
            let set = load_shares(&shares, &c)?;
            let chosen = match ids {
                None => set.shares,
                Some(ids) => select(&set.shares, &ids)?,
            };
            ensure_writable(&[&out], overwrite)?;
            let rec = recover_with_transcript(&c, &chosen).map_err(Failure::domain)?;
            if cli.verbose {
                eprintln!("shares used: {:?}", rec.share_ids);
                eprintln!("dual rows from: {:?}", rec.dual_ids);
                eprintln!("system = {:?}", rec.system.row_values());
                eprintln!("rhs = {}", rec.rhs);
            }
            for id in &rec.inconsistent_ids {
                eprintln!("warning: share {id} is inconsistent with the recovered secret");
            }
            write(&out, &write_secret(&rec.secret), overwrite)?;
            println!("{}", rec.secret);
        }
        Command::Analyze { n, k, q, t, json } => {
            let report = security_report(n, k, q, t).map_err(Failure::domain)?;
            if json {
                println!("{:#}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
        }
        Command::Verify {
            code,
            shares,
            secret,
        } => {
            let c = load_code(&code)?;
            let set = load_shares(&shares, &c)?;
            let s = load_secret(&secret, &c)?;
            let mut failed = Vec::new();
            for share in &set.shares {
                let ok = verify_share(&c, &s, share);
                println!("P{}: {}", share.id, if ok { "pass" } else { "FAIL" });
                if !ok {
                    failed.push(share.id);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Domain(format!(
                    "VerificationFailed: {} of {} shares do not match the secret: {failed:?}",
                    failed.len(),
                    set.shares.len()
                )));
            }
        }
    }
    Ok(())
}

fn select(shares: &[Share], ids: &[u32]) -> Result<Vec<Share>, Failure> {
    let mut chosen: Vec<Share> = Vec::with_capacity(ids.len());
    for &id in ids {
        if chosen.iter().any(|s| s.id == id) {
            return Err(Failure::Usage(format!(
                "--ids lists participant {id} twice"
            )));
        }
        let share = shares
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Failure::validation(format!("no share with participant id {id}")))?;
        chosen.push(share.clone());
    }
    Ok(chosen)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("remedy: {}", remedy(&msg));
            ExitCode::from(1)
        }
    }
}
