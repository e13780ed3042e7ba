//! Job descriptions and the dispatcher behind the `uqrs` binary.
//!
//! `run` never panics on bad input: usage problems and cache corruption
//! give status 2, failed consistency checks give status 1 together with a
//! machine-readable failure record, and everything else gives status 0.

use crate::cache::{Cache, CACHE_ENV};
use crate::error::{Error, Result};
use crate::euler_form::{EulerData, Which};
use crate::hc_center::{
    check_w_invariant, decomposition_json, expand_in_orbit_sums, express_orbit_sum_in_hc, grothendieck_product,
    hc_image, orbit_sum, poly_express, poly_substitute,
};
use crate::module_builder::{
    build_z, check_s2_twist, default_probes, depth, relation_audit, simple_quotient, verify_central,
    verify_trace_identity, Check,
};
use crate::pairing_engine::{
    gram_matrix, serre_in_radical, serre_in_radical_minus, GramData, PairingEngine,
};
use crate::root_data::{LieType, RootSystem, Weight};
use crate::u0_characters::{FlatElement, LatticeForm};
use crate::weight_mults::{dominant_box, freudenthal, kostant_mult, partition_count, weyl_dim, MultTable};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Matrices,
    Mults,
    HcImage,
    Product,
    PolyExpress,
    PairingGram,
    CentralElement,
    Verify,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Matrices,
        Command::Mults,
        Command::HcImage,
        Command::Product,
        Command::PolyExpress,
        Command::PairingGram,
        Command::CentralElement,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Matrices => "matrices",
            Command::Mults => "mults",
            Command::HcImage => "hc-image",
            Command::Product => "product",
            Command::PolyExpress => "poly-express",
            Command::PairingGram => "pairing-gram",
            Command::CentralElement => "central-element",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Matrices,
    Mults,
    Hc,
    Serre,
    Pairing,
    Relations,
    Central,
    Cache,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Matrices,
        Suite::Mults,
        Suite::Hc,
        Suite::Serre,
        Suite::Pairing,
        Suite::Relations,
        Suite::Central,
        Suite::Cache,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Matrices => "matrices",
            Suite::Mults => "mults",
            Suite::Hc => "hc",
            Suite::Serre => "serre",
            Suite::Pairing => "pairing",
            Suite::Relations => "relations",
            Suite::Central => "central",
            Suite::Cache => "cache",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Precondition(format!("unknown output format {s:?}"))),
        }
    }
}

/// One invocation. Weights stay as text until `run` parses them against
/// the root system.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub type_tag: String,
    pub rank: usize,
    /// Comma-separated coordinates, fundamental-weight basis unless
    /// `alpha_coords` is set.
    pub weights: Vec<String>,
    pub alpha_coords: bool,
    pub height_cutoff: Option<i64>,
    pub cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    /// Accepted for compatibility; every output is exact regardless.
    pub exact_only: bool,
    pub suite: Option<Suite>,
    pub form: LatticeForm,
    /// Module and central-element work above rank 2 is opt-in.
    pub allow_large: bool,
}

impl JobSpec {
    pub fn new(command: Command, type_tag: &str, rank: usize) -> JobSpec {
        JobSpec {
            command,
            type_tag: type_tag.to_string(),
            rank,
            weights: Vec::new(),
            alpha_coords: false,
            height_cutoff: None,
            cache_dir: None,
            output_format: OutputFormat::Json,
            exact_only: false,
            suite: None,
            form: LatticeForm::Weight,
            allow_large: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub document: String,
}

pub const STATUS_OK: i32 = 0;
pub const STATUS_FAILED: i32 = 1;
pub const STATUS_USAGE: i32 = 2;

pub fn run(job: &JobSpec) -> Outcome {
    match dispatch(job) {
        Ok((status, doc)) => Outcome { status, document: doc },
        Err(e) => {
            let (status, kind) = match &e {
                Error::Consistency(_) | Error::Arith(_) => (STATUS_FAILED, "consistency"),
                Error::Cache(_) => (STATUS_USAGE, "cache"),
                Error::Io(_) => (STATUS_USAGE, "io"),
                _ => (STATUS_USAGE, "usage"),
            };
            let rec = json!({"status": "error", "kind": kind, "command": job.command.name(), "message": e.to_string()});
            Outcome { status, document: pretty(&rec) }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

struct Ctx<'a> {
    job: &'a JobSpec,
    rs: RootSystem,
    cache: Option<Cache>,
}

fn dispatch(job: &JobSpec) -> Result<(i32, String)> {
    let t = LieType::from_str(&job.type_tag).map_err(|_| Error::InvalidType { tag: job.type_tag.clone(), rank: job.rank })?;
    let rs = RootSystem::new(t, job.rank)?;
    if let Some(h) = job.height_cutoff {
        if h < 1 {
            return Err(Error::Precondition(format!("height cutoff must be at least 1, got {h}")));
        }
    }
    let dir = job.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let cache = dir.map(Cache::open).transpose()?;
    let ctx = Ctx { job, rs, cache };
    let doc = match job.command {
        Command::Matrices => ctx.matrices()?,
        Command::Mults => ctx.mults()?,
        Command::HcImage => ctx.hc()?,
        Command::Product => ctx.product()?,
        Command::PolyExpress => ctx.poly()?,
        Command::PairingGram => ctx.gram()?,
        Command::CentralElement => ctx.central()?,
        Command::Verify => return ctx.verify(),
    };
    Ok((STATUS_OK, doc))
}

/// Parses comma-separated integer coordinates.
pub fn parse_coords(text: &str, rank: usize) -> Result<Vec<i64>> {
    let v: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Precondition(format!("malformed weight {text:?}: expected comma-separated integers")))?;
    if v.len() != rank {
        return Err(Error::Precondition(format!("weight {text:?} has {} coordinates, rank is {rank}", v.len())));
    }
    Ok(v)
}

fn coords_text(w: &Weight) -> Vec<String> {
    w.omega().iter().map(|q| q.to_string()).collect()
}

impl Ctx<'_> {
    fn weight(&self, text: &str) -> Result<Weight> {
        let v = parse_coords(text, self.rs.rank)?;
        Ok(if self.job.alpha_coords { self.rs.from_alpha_ints(&v) } else { self.rs.from_omega_ints(&v) })
    }

    fn weights(&self, want: usize) -> Result<Vec<Weight>> {
        if self.job.weights.len() != want {
            return Err(Error::Precondition(format!(
                "{} takes {want} weight(s), got {}",
                self.job.command.name(),
                self.job.weights.len()
            )));
        }
        self.job.weights.iter().map(|t| self.weight(t)).collect()
    }

    fn dominant(&self, w: &Weight) -> Result<()> {
        if !w.in_weight_lattice() || !w.is_dominant() {
            return Err(Error::Precondition(format!("{w} is not a dominant integral weight")));
        }
        Ok(())
    }

    fn guard_rank(&self) -> Result<()> {
        if self.rs.rank > 2 && !self.job.allow_large {
            return Err(Error::Precondition(format!(
                "{} needs --allow-large for rank {} (module computations grow quickly)",
                self.job.command.name(),
                self.rs.rank
            )));
        }
        Ok(())
    }

    fn cutoff(&self, default: i64) -> i64 {
        self.job.height_cutoff.unwrap_or(default)
    }

    fn table(&self, lam: &Weight) -> Result<MultTable> {
        let Some(cache) = &self.cache else { return freudenthal(&self.rs, lam) };
        let key = format!("mults/{}/{}", self.rs.label(), coords_text(lam).join(","));
        let v = cache.get_or_put(&key, || Ok(freudenthal(&self.rs, lam)?.to_json(&self.rs)))?;
        MultTable::from_json(&self.rs, &v)
    }

    fn gram(&self) -> Result<String> {
        let [w] = <[Weight; 1]>::try_from(self.weights(1)?).expect("one weight");
        let beta = w
            .alpha_ints()
            .filter(|b| b.iter().all(|&k| k >= 0))
            .ok_or_else(|| Error::Precondition(format!("{w} is not in the positive root cone")))?;
        let h: i64 = beta.iter().sum();
        let cutoff = self.cutoff(h.max(1));
        let eng = PairingEngine::new(EulerData::new(self.rs.clone()));
        let compute = || -> Result<Value> { Ok(gram_matrix(&eng, &beta, cutoff)?.to_json(&eng)) };
        let v = match &self.cache {
            Some(c) if h <= cutoff => {
                let key = format!("gram/{}/{}", self.rs.label(), beta.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
                c.get_or_put(&key, compute)?
            }
            _ => compute()?,
        };
        let gd = GramData::from_json(&v)?;
        match self.job.output_format {
            OutputFormat::Json => Ok(pretty(&v)),
            OutputFormat::Csv => {
                let mut s = String::from("f_word,e_word,value\n");
                for (p, row) in gd.gram.iter().enumerate() {
                    for (q, x) in row.iter().enumerate() {
                        let word = |l: &[usize]| l.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
                        s += &format!("{},{},\"{x}\"\n", word(gd.f_words[p].letters()), word(gd.e_words[q].letters()));
                    }
                }
                Ok(s)
            }
        }
    }

    fn matrices(&self) -> Result<String> {
        if !self.job.weights.is_empty() {
            return Err(Error::Precondition("matrices takes no weights".into()));
        }
        let ed = EulerData::new(self.rs.clone());
        let mut v = ed.to_json();
        v["cartan"] = json!(self.rs.cartan);
        v["symmetrizers"] = json!(self.rs.symmetrizers);
        match self.job.output_format {
            OutputFormat::Json => Ok(pretty(&v)),
            OutputFormat::Csv => {
                let (dm, _) = ed.det_and_kernel(Which::RMinusS);
                let (dp, k) = ed.det_and_kernel(Which::RPlusS);
                Ok(format!(
                    "type,rank,detRminusS,detRplusS,kernel_dim\n{},{},{dm},{dp},{}\n",
                    self.rs.type_tag,
                    self.rs.rank,
                    k.len()
                ))
            }
        }
    }

    fn mults(&self) -> Result<String> {
        let [lam] = <[Weight; 1]>::try_from(self.weights(1)?).expect("one weight");
        self.dominant(&lam)?;
        let t = self.table(&lam)?;
        match self.job.output_format {
            OutputFormat::Json => Ok(pretty(&t.to_json(&self.rs))),
            OutputFormat::Csv => {
                let head: Vec<String> = (1..=self.rs.rank).map(|i| format!("w{i}")).collect();
                let mut s = format!("{},mult\n", head.join(","));
                for (w, m) in t.entries() {
                    s += &format!("{},{m}\n", coords_text(w).join(","));
                }
                Ok(s)
            }
        }
    }

    fn hc(&self) -> Result<String> {
        let [lam] = <[Weight; 1]>::try_from(self.weights(1)?).expect("one weight");
        let img = hc_image(&self.rs, &lam, self.job.form)?;
        check_w_invariant(&self.rs, &img.flat).map_err(|e| Error::Consistency(e.to_string()))?;
        let orbit = expand_in_orbit_sums(&self.rs, &img.flat)?;
        match self.job.output_format {
            OutputFormat::Json => Ok(pretty(&json!({
                "lambda": coords_text(&lam),
                "form": self.job.form,
                "image": img.flat.to_json(),
                "orbit_sums": orbit.iter().map(|(w, c)| json!({"nu": coords_text(w), "c": c})).collect::<Vec<_>>(),
            }))),
            OutputFormat::Csv => Ok(flat_csv(self.rs.rank, &img.flat)),
        }
    }

    fn product(&self) -> Result<String> {
        let ws = self.weights(2)?;
        for w in &ws {
            self.dominant(w)?;
        }
        let dec = grothendieck_product(&self.rs, &ws[0], &ws[1])?;
        match self.job.output_format {
            OutputFormat::Json => Ok(pretty(&decomposition_json(&ws[0], &ws[1], &dec))),
            OutputFormat::Csv => {
                let head: Vec<String> = (1..=self.rs.rank).map(|i| format!("nu{i}")).collect();
                let mut s = format!("{},c\n", head.join(","));
                for (w, c) in &dec {
                    s += &format!("{},{c}\n", coords_text(w).join(","));
                }
                Ok(s)
            }
        }
    }

    fn poly(&self) -> Result<String> {
        let [lam] = <[Weight; 1]>::try_from(self.weights(1)?).expect("one weight");
        let p = poly_express(&self.rs, &lam)?;
        let img = hc_image(&self.rs, &lam, LatticeForm::Weight)?;
        if poly_substitute(&self.rs, &p)? != img.flat {
            return Err(Error::Consistency(format!("substituting {p} does not reproduce the image of {lam}")));
        }
        match self.job.output_format {
            OutputFormat::Json => Ok(pretty(&json!({
                "lambda": coords_text(&lam),
                "polynomial": p.to_string(),
                "terms": p.to_json(),
            }))),
            OutputFormat::Csv => {
                let head: Vec<String> = (1..=self.rs.rank).map(|i| format!("e{i}")).collect();
                let mut s = format!("{},coefficient\n", head.join(","));
                for (e, c) in p.terms() {
                    s += &format!("{},{c}\n", e.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                }
                Ok(s)
            }
        }
    }

    fn central(&self) -> Result<String> {
        self.guard_rank()?;
        let [lam] = <[Weight; 1]>::try_from(self.weights(1)?).expect("one weight");
        self.dominant(&lam)?;
        let eng = PairingEngine::new(EulerData::new(self.rs.clone()));
        let z = build_z(&eng, &lam, self.job.form)?;
        let img = hc_image(&self.rs, &lam, self.job.form)?;
        let proj = z.hc_projection(&eng.ed);
        if proj != img.flat {
            return Err(Error::Consistency(format!("Harish-Chandra projection of z at {lam} differs from its image")));
        }
        match self.job.output_format {
            OutputFormat::Json => {
                let mut v = z.to_json();
                v["hc_projection"] = proj.to_json();
                Ok(pretty(&v))
            }
            OutputFormat::Csv => Ok(flat_csv(self.rs.rank, &proj)),
        }
    }

    fn verify(&self) -> Result<(i32, String)> {
        let suite = self.job.suite.ok_or_else(|| Error::Precondition("verify needs --suite".into()))?;
        let suites: Vec<Suite> = if suite == Suite::All {
            let mut v = vec![Suite::Matrices, Suite::Mults, Suite::Hc, Suite::Serre, Suite::Pairing];
            if self.rs.rank <= 2 || self.job.allow_large {
                v.extend([Suite::Relations, Suite::Central]);
            }
            v
        } else {
            vec![suite]
        };
        let mut checks = Vec::new();
        for s in suites {
            let found = match s {
                Suite::Matrices => self.suite_matrices(),
                Suite::Mults => self.suite_mults()?,
                Suite::Hc => self.suite_hc()?,
                Suite::Serre => self.suite_serre()?,
                Suite::Pairing => self.suite_pairing()?,
                Suite::Relations => self.suite_relations()?,
                Suite::Central => self.suite_central()?,
                Suite::Cache => self.suite_cache()?,
                Suite::All => unreachable!("expanded above"),
            };
            checks.extend(found.into_iter().map(|c| (s, c)));
        }
        let failed: Vec<&(Suite, Check)> = checks.iter().filter(|(_, c)| !c.passed).collect();
        let status = if failed.is_empty() { STATUS_OK } else { STATUS_FAILED };
        let rec = |(s, c): &(Suite, Check)| json!({"suite": s.name(), "name": c.name, "passed": c.passed, "detail": c.detail});
        let doc = match self.job.output_format {
            OutputFormat::Json => pretty(&json!({
                "type": self.rs.label(),
                "suite": suite.name(),
                "status": if failed.is_empty() { "passed" } else { "failed" },
                "checks": checks.len(),
                "failures": failed.iter().map(|c| rec(c)).collect::<Vec<_>>(),
                "results": checks.iter().map(rec).collect::<Vec<_>>(),
            })),
            OutputFormat::Csv => {
                let mut s = String::from("suite,name,passed\n");
                for (st, c) in &checks {
                    s += &format!("{},\"{}\",{}\n", st.name(), c.name, c.passed);
                }
                s
            }
        };
        Ok((status, doc))
    }

    fn box_weights(&self, default: i64) -> Result<Vec<Weight>> {
        if self.job.weights.is_empty() {
            Ok(dominant_box(&self.rs, self.cutoff(default)))
        } else {
            let ws: Vec<Weight> = self.job.weights.iter().map(|t| self.weight(t)).collect::<Result<_>>()?;
            for w in &ws {
                self.dominant(w)?;
            }
            Ok(ws)
        }
    }

    fn suite_matrices(&self) -> Vec<Check> {
        let rs = &self.rs;
        let ed = EulerData::new(rs.clone());
        let n = rs.rank;
        let b = ed.matrix(Which::RMinusS);
        let mut out = Vec::new();
        let dc = (0..n).all(|i| (0..n).all(|j| b[i][j] == rs.symmetrizers[i] * rs.cartan[i][j]));
        out.push(check("R - S = DC", dc, None));
        let (dm, _) = ed.det_and_kernel(Which::RMinusS);
        let want: i64 = rs.symmetrizers.iter().product::<i64>() * rs.cartan_det();
        out.push(check("det(R - S) = det(D) det(C) > 0", dm == want.into() && want > 0, Some(dm.to_string())));
        for i in 0..n {
            let sigma: Vec<Vec<i64>> = {
                let cols: Vec<Vec<i64>> = (0..n)
                    .map(|j| rs.reflect(i, &rs.simple_root(j)).alpha_ints().expect("root lattice"))
                    .collect();
                (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
            };
            let lhs = int_mul(&b, &sigma);
            let st: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| sigma[c][r]).collect()).collect();
            let rhs = int_mul(&st, &b);
            out.push(check(&format!("(R - S) s{0} = s{0}^T (R - S)", i + 1), lhs == rhs, None));
        }
        let (dp, k) = ed.det_and_kernel(Which::RPlusS);
        out.push(check("det(R + S) vanishes exactly when the kernel is nontrivial", dp.is_zero() == !k.is_empty(), Some(dp.to_string())));
        out
    }

    fn suite_mults(&self) -> Result<Vec<Check>> {
        let rs = &self.rs;
        let mut out = Vec::new();
        for lam in self.box_weights(4)? {
            let t = self.table(&lam)?;
            let mut bad = None;
            if rs.rank <= 3 {
                for (mu, m) in t.entries() {
                    let k = kostant_mult(rs, &lam, mu)?;
                    if k != m {
                        bad = Some(format!("mu = {mu}: freudenthal {m}, kostant {k}"));
                        break;
                    }
                }
            }
            out.push(check(&format!("freudenthal = kostant at {lam}"), bad.is_none(), bad));
            let (d, w) = (t.dimension(rs), weyl_dim(rs, &lam)?);
            out.push(check(&format!("dimension of L({lam})"), d == w, Some(format!("{d} vs {w}"))));
        }
        Ok(out)
    }

    fn suite_hc(&self) -> Result<Vec<Check>> {
        let rs = &self.rs;
        let mut out = Vec::new();
        for lam in self.box_weights(4)? {
            let img = hc_image(rs, &lam, LatticeForm::Weight)?;
            let inv = check_w_invariant(rs, &img.flat);
            out.push(check(&format!("image of {lam} is Weyl invariant"), inv.is_ok(), inv.err().map(|e| e.to_string())));
            let back = expand_in_orbit_sums(rs, &img.flat)?
                .iter()
                .fold(FlatElement::zero(), |acc, (w, c)| acc.add(&orbit_sum(rs, w).scale(c)));
            out.push(check(&format!("orbit-sum expansion of {lam} round-trips"), back == img.flat, None));
            let mut rebuilt = FlatElement::zero();
            for (mu, c) in express_orbit_sum_in_hc(rs, &lam)? {
                rebuilt = rebuilt.add(&hc_image(rs, &mu, LatticeForm::Weight)?.flat.scale(&c));
            }
            out.push(check(&format!("orbit sum of {lam} in images round-trips"), rebuilt == orbit_sum(rs, &lam), None));
            let p = poly_express(rs, &lam)?;
            out.push(check(&format!("polynomial {p} reproduces {lam}"), poly_substitute(rs, &p)? == img.flat, None));
        }
        Ok(out)
    }

    fn suite_serre(&self) -> Result<Vec<Check>> {
        let eng = PairingEngine::new(EulerData::new(self.rs.clone()));
        let n = self.rs.rank;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                out.push(check(&format!("e-Serre ({}, {}) in radical", i + 1, j + 1), serre_in_radical(&eng, i, j)?, None));
                out.push(check(
                    &format!("f-Serre ({}, {}) in radical", i + 1, j + 1),
                    serre_in_radical_minus(&eng, i, j)?,
                    None,
                ));
            }
        }
        Ok(out)
    }

    fn suite_pairing(&self) -> Result<Vec<Check>> {
        let rs = &self.rs;
        let eng = PairingEngine::new(EulerData::new(rs.clone()));
        let h = self.cutoff(3);
        let mut out = Vec::new();
        for beta in positive_degrees(rs.rank, h) {
            let gd = gram_matrix(&eng, &beta, h)?;
            let want = partition_count(rs, &beta);
            out.push(check(
                &format!("rank of Gram matrix at {beta:?}"),
                gd.pivot_rows.len() as u64 == want,
                Some(format!("{} vs {want}", gd.pivot_rows.len())),
            ));
        }
        Ok(out)
    }

    fn suite_relations(&self) -> Result<Vec<Check>> {
        self.guard_rank()?;
        let rs = &self.rs;
        let ed = EulerData::new(rs.clone());
        let eng = PairingEngine::new(ed.clone());
        let mut out = Vec::new();
        for lam in self.box_weights(2)? {
            let m = simple_quotient(&eng, &lam, depth(rs, &lam).max(1))?;
            let t = self.table(&lam)?;
            let dims: BTreeMap<Weight, usize> = m.weight_dims();
            let full = t.all_weights(rs);
            let ok = full.len() == dims.len() && full.iter().all(|(w, k)| dims.get(w).copied() == Some(*k as usize));
            out.push(check(&format!("L({lam}) weight spaces match multiplicities"), ok, None));
            for c in relation_audit(&ed, &eng, &m) {
                out.push(Check { name: format!("L({lam}): {}", c.name), ..c });
            }
            out.push(check(&format!("L({lam}): square of the antipode twist"), check_s2_twist(&ed, &m), None));
        }
        Ok(out)
    }

    fn suite_central(&self) -> Result<Vec<Check>> {
        self.guard_rank()?;
        let rs = &self.rs;
        let ed = EulerData::new(rs.clone());
        let eng = PairingEngine::new(ed.clone());
        let lams: Vec<Weight> = if self.job.weights.is_empty() {
            (0..rs.rank).map(|i| rs.fundamental(i)).filter(|w| self.job.form.admits(w)).collect()
        } else {
            self.box_weights(0)?
        };
        let modules = dominant_box(rs, self.cutoff(2));
        let mut out = Vec::new();
        let mut built = BTreeMap::new();
        for nu in modules.iter().chain(lams.iter()) {
            if !built.contains_key(nu) {
                built.insert(nu.clone(), simple_quotient(&eng, nu, depth(rs, nu).max(1))?);
            }
        }
        for lam in &lams {
            let z = build_z(&eng, lam, self.job.form)?;
            let img = hc_image(rs, lam, self.job.form)?;
            out.push(check(&format!("z({lam}) projects to its image"), z.hc_projection(&ed) == img.flat, None));
            for nu in &modules {
                let rep = verify_central(&ed, &z, &built[nu]);
                out.push(check(&format!("z({lam}) is central with the predicted scalar on L({nu})"), rep.passed(), rep.first_failure));
            }
            let probes = default_probes(&eng, &z);
            let pairs = verify_trace_identity(&eng, &z, &built[lam], &probes);
            let bad = pairs.iter().position(|(a, b)| a != b);
            out.push(check(
                &format!("trace identity for z({lam}) on {} probes", pairs.len()),
                bad.is_none(),
                bad.map(|k| format!("probe {k}: {} vs {}", pairs[k].0, pairs[k].1)),
            ));
        }
        Ok(out)
    }

    fn suite_cache(&self) -> Result<Vec<Check>> {
        let Some(cache) = &self.cache else {
            return Err(Error::Precondition("the cache suite needs --cache-dir or UQRS_CACHE_DIR".into()));
        };
        let rep = crate::cache::cache_roundtrip(cache.dir())?;
        if let Some(f) = rep.failures.first() {
            return Err(Error::Cache(f.clone()));
        }
        Ok(rep.checked.into_iter().map(|k| check(&format!("cache entry {k}"), true, None)).collect())
    }
}

fn check(name: &str, passed: bool, detail: Option<String>) -> Check {
    Check { name: name.to_string(), passed, detail: if passed { None } else { detail } }
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    a.iter().map(|row| (0..b[0].len()).map(|c| (0..n).map(|k| row[k] * b[k][c]).sum()).collect()).collect()
}

/// Nonzero degrees in `Q^+` of height at most `h`, by height then lexicographic.
pub fn positive_degrees(rank: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().any(|&k| k > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, h, &mut cur, &mut out);
    out.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    out
}

fn flat_csv(rank: usize, x: &FlatElement) -> String {
    let head: Vec<String> = (1..=rank).map(|i| format!("eta{i}")).collect();
    let mut s = format!("{},coef\n", head.join(","));
    for (w, c) in x.terms() {
        s += &format!("{},\"{c}\"\n", coords_text(w).join(","));
    }
    s
}
