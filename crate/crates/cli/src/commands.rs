use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use mpcodes::format::{self, Document};
use mpcodes::oracle::{self, Claim, VerifyConfig, VerifyReport};
use mpcodes::random::{seeded_instances, InstanceSpec};
use mpcodes::search::{self, SearchConfig};
use mpcodes::{
    CheckReport, Distance, DistanceConfig, GeneralCheckConfig, LinearCode, Matrix, Verdict,
};

use crate::{Caps, Command, Mode, Output};

pub const EXIT_USAGE: u8 = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: mpcodes::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] mpcodes::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => 11,
            CliError::Input { .. } => 12,
            CliError::Lib(_) => 13,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

impl Caps {
    fn distance(&self) -> DistanceConfig {
        DistanceConfig {
            enum_cap: self.enum_cap,
            lw_cap: self.lw_cap,
        }
    }

    fn general(&self) -> GeneralCheckConfig {
        match self.search_cap {
            Some(c) => GeneralCheckConfig {
                max_pairs: c as usize,
                max_subsets: (c as usize).saturating_mul(2),
            },
            None => GeneralCheckConfig::default(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> mpcodes::Result<T>) -> Result<T> {
    parse(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Collects report lines in either output style.
struct Sink {
    machine: bool,
    text: String,
}

impl Sink {
    fn new(machine: bool) -> Sink {
        Sink {
            machine,
            text: String::new(),
        }
    }

    /// A fact: `key: value` in machine mode, the human line otherwise.
    fn fact(&mut self, key: &str, value: impl std::fmt::Display, human: impl FnOnce() -> String) {
        if self.machine {
            let _ = writeln!(self.text, "{key}: {value}");
        } else {
            let _ = writeln!(self.text, "{}", human());
        }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{key}: {value}");
    }

    fn line(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{s}");
    }

    fn matrix(&mut self, key: &str, m: &Matrix) {
        if self.machine {
            for row in m.to_string().lines() {
                self.kv(key, row);
            }
        } else {
            self.line(format!("{key}:"));
            let _ = write!(self.text, "{m}");
        }
    }

    fn flush(self) {
        print!("{}", self.text);
    }
}

/// `[n,k,d] (strategy)`, `[n,k,≥lo≤hi] (bounds)` or `[n,0,-]`.
fn params(
    sink: &mut Sink,
    prefix: &str,
    code: &LinearCode,
    caps: &Caps,
) -> Result<Option<Distance>> {
    let (n, k) = (code.len(), code.dim());
    let dist = if k == 0 {
        None
    } else {
        Some(code.min_distance(&caps.distance())?)
    };
    if sink.machine {
        sink.kv(&format!("{prefix}n"), n);
        sink.kv(&format!("{prefix}k"), k);
        match &dist {
            None => sink.kv(&format!("{prefix}d"), "-"),
            Some(Distance::Exact { d, .. }) => sink.kv(&format!("{prefix}d"), d),
            Some(b @ Distance::Bounds { .. }) => {
                sink.kv(&format!("{prefix}d_lower"), b.lower());
                sink.kv(&format!("{prefix}d_upper"), b.upper());
            }
        }
        if let Some(d) = &dist {
            sink.kv(&format!("{prefix}strategy"), d.strategy_label());
        }
    } else {
        let label = if prefix.is_empty() {
            String::new()
        } else {
            format!("{}: ", prefix.trim_end_matches('_'))
        };
        let line = match &dist {
            None => format!("[{n},0,-]"),
            Some(Distance::Exact { d, .. }) => format!(
                "[{n},{k},{d}] ({})",
                dist.as_ref().unwrap().strategy_label()
            ),
            Some(b) => format!("[{n},{k},≥{}≤{}] (bounds)", b.lower(), b.upper()),
        };
        sink.line(format!("{label}{line}"));
    }
    Ok(dist)
}

fn check_ell(field: &mpcodes::Field, ell: u32) -> Result<()> {
    if ell >= field.degree() {
        return Err(CliError::Usage(format!(
            "--ell {ell} out of range: the field has extension degree {}",
            field.degree()
        )));
    }
    Ok(())
}

fn set(rows: &[usize]) -> String {
    let items: Vec<String> = rows.iter().map(|r| (r + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Info { file, caps, out } => info(&file, &caps, &out),
        Command::Mp { file, caps, out } => expand(&file, &caps, &out),
        Command::Dual {
            file,
            ell,
            caps,
            out,
        } => dual(&file, ell, &caps, &out),
        Command::Check {
            file,
            mode,
            ell,
            caps,
            out,
        } => check(&file, mode, ell, &caps, &out),
        Command::Verify {
            files,
            ell,
            random,
            seed,
            oracle_cap,
            caps,
            out,
        } => verify(&files, ell, random, seed, oracle_cap, &caps, &out),
        Command::Search {
            matrix,
            mode,
            ell,
            n,
            dims,
            target,
            seed,
            count,
            caps,
            out,
        } => {
            let cfg = SearchConfig {
                attempts: caps.search_cap.unwrap_or(SearchConfig::default().attempts),
                count,
                target,
                seed,
                distance: caps.distance(),
            };
            search(&matrix, mode, ell, n, &dims, &cfg, &caps, &out)
        }
    }
}

fn info(file: &Path, caps: &Caps, out: &Output) -> Result<u8> {
    let mut sink = Sink::new(out.machine);
    match load(file, format::parse_document)? {
        Document::Code(c) => {
            params(&mut sink, "", &c, caps)?;
        }
        Document::Mp(f) => {
            params(&mut sink, "", &f.mp.expand(), caps)?;
        }
        Document::Matrix(m) => {
            let (r, c) = m.shape();
            sink.fact("rows", r, || format!("matrix {r}x{c}, rank {}", m.rank()));
            if sink.machine {
                sink.kv("cols", c);
                sink.kv("rank", m.rank());
            }
        }
    }
    sink.flush();
    Ok(0)
}

fn expand(file: &Path, caps: &Caps, out: &Output) -> Result<u8> {
    let f = load(file, format::parse_mp)?;
    let code = f.mp.expand();
    let text = format::write_code(&code);
    match &out.out {
        Some(path) => {
            write(path, &text)?;
            let mut sink = Sink::new(out.machine);
            params(&mut sink, "", &code, caps)?;
            sink.flush();
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn dual(file: &Path, ell: u32, caps: &Caps, out: &Output) -> Result<u8> {
    let f = load(file, format::parse_mp)?;
    let mp = &f.mp;
    check_ell(mp.field(), ell)?;
    let mut sink = Sink::new(out.machine);
    let code = if mp.matrix().has_full_row_rank() {
        let d = mp.dual_full_rank(ell)?;
        sink.fact("path", "full-rank", || "path: full-rank".into());
        params(&mut sink, "dual_", &d.code, caps)?;
        sink.matrix("completion", &d.completion);
        sink.matrix("dual_matrix", d.mp.matrix());
        for (i, c) in d.mp.constituents().iter().enumerate() {
            let (n, k) = (c.len(), c.dim());
            sink.fact(
                &format!("dual_constituent_{}", i + 1),
                format!("{n} {k}"),
                || format!("dual constituent {}: [{n},{k}]", i + 1),
            );
        }
        d.code
    } else {
        let part = mp.row_partition();
        let mut path = format!(
            "partition{}",
            part.blocks.iter().map(|b| set(b)).collect::<String>()
        );
        if !part.discarded.is_empty() {
            path.push_str(&format!(" discarded{}", set(&part.discarded)));
        }
        sink.fact("path", &path, || format!("path: {path}"));
        let code = mp.dual_general(ell)?;
        params(&mut sink, "dual_", &code, caps)?;
        code
    };
    if let Some(path) = &out.out {
        write(path, &format::write_code(&code))?;
    }
    sink.flush();
    Ok(0)
}

fn report_lines(sink: &mut Sink, r: &CheckReport) {
    if !sink.machine {
        let _ = write!(sink.text, "{r}");
        return;
    }
    sink.kv("verdict", r.verdict);
    sink.kv("ell", r.ell);
    if let Some((iota, gamma)) = &r.pair {
        sink.kv("pair", format!("{} {}", set(iota), set(gamma)));
    }
    sink.kv("label", r.label);
    sink.matrix("matrix_row", &r.condition_matrix);
    for w in &r.witnesses {
        let ok = if w.ok { "ok" } else { "FAIL" };
        sink.kv(
            "witness",
            format!(
                "{} {} {} {ok}",
                w.i + 1,
                w.j + 1,
                w.condition.describe(r.ell)
            ),
        );
    }
    for c in r.requirements() {
        sink.kv("requirement", c.describe(r.ell));
    }
    for n in &r.notes {
        sink.kv("note", n);
    }
}

fn check(file: &Path, mode: Mode, ell: u32, caps: &Caps, out: &Output) -> Result<u8> {
    let f = load(file, format::parse_mp)?;
    check_ell(f.mp.field(), ell)?;
    let report = match mode {
        Mode::So => f.mp.check_self_orthogonal(ell)?,
        Mode::Dc => f.mp.check_dual_containing(ell, &caps.general())?,
    };
    let mut sink = Sink::new(out.machine);
    report_lines(&mut sink, &report);
    if let Some(path) = &out.out {
        write(path, &sink.text)?;
    }
    sink.flush();
    Ok(match report.verdict {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::Inconclusive => 2,
    })
}

/// Level named by the first claim that carries one.
fn claimed_ell(claims: &[Claim]) -> Option<u32> {
    claims.iter().find_map(|c| match c {
        Claim::Dual { ell, .. }
        | Claim::SelfOrthogonal { ell, .. }
        | Claim::DualContaining { ell, .. } => Some(*ell),
        Claim::Code { .. } => None,
    })
}

fn verify_lines(sink: &mut Sink, header: String, r: &VerifyReport) {
    sink.fact("instance", &header, || format!("== {header}"));
    for l in &r.lines {
        if sink.machine {
            sink.kv("line", l);
        } else {
            sink.line(l);
        }
    }
}

fn verify(
    files: &[PathBuf],
    ell: Option<u32>,
    random: usize,
    seed: u64,
    oracle_cap: u64,
    caps: &Caps,
    out: &Output,
) -> Result<u8> {
    if files.is_empty() && random == 0 {
        return Err(CliError::Usage(
            "verify needs MP files or --random N".into(),
        ));
    }
    let cfg = VerifyConfig {
        oracle_cap,
        distance: caps.distance(),
        general: caps.general(),
    };
    let mut sink = Sink::new(out.machine);
    let mut all = VerifyReport::default();
    for file in files {
        let f = load(file, format::parse_mp)?;
        let level = ell.or_else(|| claimed_ell(&f.claims)).unwrap_or(0);
        check_ell(f.mp.field(), level)?;
        let r = oracle::verify(&f.mp, level, &f.claims, &cfg)?;
        verify_lines(&mut sink, format!("{} ell={level}", file.display()), &r);
        all.extend(r);
    }
    for (i, (mp, level)) in seeded_instances(seed, random, &InstanceSpec::default())
        .into_iter()
        .enumerate()
    {
        let level = ell.map_or(level, |l| l % mp.field().degree());
        let r = oracle::verify(&mp, level, &[], &cfg)?;
        let (m, nn) = mp.matrix().shape();
        let header = format!(
            "random {} q={} {m}x{nn} n={} ell={level}",
            i + 1,
            mp.field().order(),
            mp.constituent_len()
        );
        verify_lines(&mut sink, header, &r);
        all.extend(r);
    }
    let agree = all.all_agree();
    let disagreements = all
        .lines
        .iter()
        .filter(|l| l.status == oracle::Status::Disagree)
        .count();
    let skips = all
        .lines
        .iter()
        .filter(|l| l.status == oracle::Status::Skip)
        .count();
    sink.fact("result", if agree { "agree" } else { "disagree" }, || {
        format!(
            "result: {} ({} lines, {disagreements} disagreements, {skips} skipped)",
            if agree { "all agree" } else { "DISAGREEMENT" },
            all.lines.len()
        )
    });
    sink.flush();
    Ok(if agree { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn search(
    matrix: &Path,
    mode: Mode,
    ell: u32,
    n: usize,
    dims: &[usize],
    cfg: &SearchConfig,
    caps: &Caps,
    out: &Output,
) -> Result<u8> {
    let a = load(matrix, format::parse_matrix)?;
    check_ell(a.field(), ell)?;
    let smode = match mode {
        Mode::So => search::Mode::SelfOrthogonal,
        Mode::Dc => search::Mode::DualContaining,
    };
    let mut sink = Sink::new(out.machine);
    let outcome = match search::search(&a, smode, ell, n, dims, cfg) {
        Ok(o) => o,
        Err(mpcodes::Error::Infeasible(why)) => {
            sink.fact("infeasible", &why, || format!("infeasible: {why}"));
            sink.flush();
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    for c in &outcome.requirements {
        sink.fact("requirement", c.describe(ell), || {
            format!("requires {}", c.describe(ell))
        });
    }
    sink.fact("attempts", outcome.attempts, || {
        format!("attempts: {}", outcome.attempts)
    });
    sink.fact("candidates", outcome.candidates.len(), || {
        format!("candidates: {}", outcome.candidates.len())
    });
    if let Some(dir) = &out.out {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    for (i, c) in outcome.candidates.iter().enumerate() {
        let code = c.mp.expand();
        let mut claims = vec![match mode {
            Mode::So => Claim::SelfOrthogonal { ell, holds: true },
            Mode::Dc => Claim::DualContaining { ell, holds: true },
        }];
        claims.push(Claim::Code {
            n: code.len(),
            k: code.dim(),
            d: c.distance.exact(),
        });
        let text = format::write_mp(&c.mp, &claims);
        sink.fact("candidate", i + 1, || {
            format!("candidate {} (attempt {})", i + 1, c.attempt)
        });
        if sink.machine {
            sink.kv("attempt", c.attempt);
        }
        params(&mut sink, "", &code, caps)?;
        match &out.out {
            Some(dir) => {
                let path = dir.join(format!("candidate_{}.mp", i + 1));
                write(&path, &text)?;
                sink.fact("file", path.display(), || {
                    format!("wrote {}", path.display())
                });
            }
            None if !sink.machine => {
                let _ = write!(sink.text, "{text}");
            }
            None => {}
        }
    }
    sink.flush();
    Ok(if outcome.candidates.is_empty() { 1 } else { 0 })
}
