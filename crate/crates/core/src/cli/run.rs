use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::LieAlgebraData;
use crate::geometry::{de_rham, Forms, ManifoldModel, PreSymplecticStructure};
use crate::graded_core::{q, TriDegree};
use crate::poisson::{
    casimir_2shifted_with, mc_check, mu_compat, poisson_to_symplectic, schouten, sigma, symplectic_to_poisson, PolyAlgebra,
    PoissonStructure,
};
use crate::quantise::{bv_laplacian, qme_check, right_de_rham, QuantisationElement, RightConnectionData};
use crate::simplicial::{descent_2shifted_with, NerveData};
use crate::superalgebra::{enumerate_monomials, model_cohomology, Derivation, FreeSuperCDGA, Poly, Truncation, DEFAULT_DEGREE_CAP};

use super::dsl::{parse_model, print_model, Contexts, LieDecl, ModelSpec};
use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Command {
    Validate,
    Cohomology,
    Derham,
    Mc,
    Bracket,
    Casimir,
    Descent,
    Bv,
    Qme,
    Normalize,
    Roundtrip,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology => "cohomology",
            Command::Derham => "derham",
            Command::Mc => "mc",
            Command::Bracket => "bracket",
            Command::Casimir => "casimir",
            Command::Descent => "descent",
            Command::Bv => "bv",
            Command::Qme => "qme",
            Command::Normalize => "normalize",
            Command::Roundtrip => "roundtrip",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub weight_cutoff: Option<i64>,
    pub hbar_order: Option<u32>,
    pub degree_window: Option<(i64, i64)>,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: Command,
    pub entries: Vec<(String, String)>,
    pub verdict: Verdict,
}

impl Report {
    fn new(command: Command) -> Self {
        Report { command, entries: Vec::new(), verdict: Verdict::Pass }
    }

    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    fn require(&mut self, key: &str, ok: bool) {
        self.put(key, if ok { "ok" } else { "FAILED" });
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let verdict = if self.passed() { "pass" } else { "fail" };
        let mut s = String::new();
        match format {
            Format::Text => {
                let _ = writeln!(s, "{}: {verdict}", self.command.name());
                let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    let mut lines = v.lines();
                    let _ = writeln!(s, "  {k:width$}  {}", lines.next().unwrap_or(""));
                    for l in lines {
                        let _ = writeln!(s, "  {:width$}  {l}", "");
                    }
                }
            }
            Format::Structured => {
                let _ = writeln!(s, "command={}", self.command.name());
                let _ = writeln!(s, "verdict={verdict}");
                for (k, v) in &self.entries {
                    if v.contains('\n') {
                        for (i, l) in v.lines().enumerate() {
                            let _ = writeln!(s, "{k}.{i}={l}");
                        }
                    } else {
                        let _ = writeln!(s, "{k}={v}");
                    }
                }
            }
        }
        s
    }
}

fn cutoff(spec: &ModelSpec, key: &str, flag: Option<i64>, default: i64) -> i64 {
    flag.or_else(|| spec.cutoffs.get(key).copied()).unwrap_or(default)
}

fn build_model(spec: &ModelSpec) -> Result<ManifoldModel, CliError> {
    let ring = spec.ring();
    let mut q_images = Vec::with_capacity(ring.len());
    let mut d_images = Vec::with_capacity(ring.len());
    for g in &spec.gens {
        q_images.push(spec.q.get(&g.name).map_or(Ok(Poly::zero()), |e| e.eval(&ring))?);
        d_images.push(spec.delta.get(&g.name).map_or(Ok(Poly::zero()), |e| e.eval(&ring))?);
    }
    let algebra = FreeSuperCDGA::new(&ring, q_images, d_images)?;
    Ok(ManifoldModel::infer(algebra)?)
}

fn shift(spec: &ModelSpec) -> Result<(i64, bool), CliError> {
    spec.shift.ok_or_else(|| CliError::Input("a 'shift' statement is required".into()))
}

fn first_lie(spec: &ModelSpec) -> Result<&LieDecl, CliError> {
    spec.lies.first().ok_or_else(|| CliError::Input("a 'lie' statement is required".into()))
}

fn lie_action(spec: &ModelSpec, l: &LieDecl, g: &LieAlgebraData, m: &ManifoldModel) -> Result<Vec<Derivation>, CliError> {
    if l.action.is_empty() {
        return Ok(Vec::new());
    }
    let ring = m.ring();
    let mut out = Vec::with_capacity(g.dim());
    for i in 0..g.dim() {
        let mut images = Vec::with_capacity(ring.len());
        for gd in &spec.gens {
            images.push(l.action.get(&(i, gd.name.clone())).map_or(Ok(Poly::zero()), |e| e.eval(ring))?);
        }
        out.push(Derivation::new(ring, TriDegree::ZERO, images)?);
    }
    Ok(out)
}

/// The rings in which `poisson`, `symplectic` and `element` statements are read, where the model allows.
pub fn contexts(spec: &ModelSpec) -> Contexts {
    let Ok(model) = build_model(spec) else {
        return Contexts::default();
    };
    let poisson = spec.shift.map(|(n, rev)| PolyAlgebra::new(&model, n, rev).ring().clone());
    let forms = Some(Forms::new(&model).ring().clone());
    let elements = right_de_rham(&model, &RightConnectionData::unit_volume()).ok().map(|r| r.ring().clone());
    Contexts { poisson, forms, elements }
}

/// `print ∘ parse`.
pub fn normal_form(text: &str) -> Result<String, CliError> {
    let spec = parse_model(text)?;
    Ok(print_model(&spec, &contexts(&spec)))
}

fn poisson_algebra(spec: &ModelSpec, model: &ManifoldModel, opts: &Options) -> Result<PolyAlgebra, CliError> {
    let (n, rev) = shift(spec)?;
    let w = cutoff(spec, "weight", opts.weight_cutoff, 4).max(2);
    Ok(PolyAlgebra::with_cutoff(model, n, rev, w as usize))
}

fn residual_table(rep: &mut Report, prefix: &str, ring: &crate::superalgebra::Ring, res: &BTreeMap<impl ToString + Ord, Poly>) {
    for (k, p) in res {
        rep.put(format!("{prefix}.{}", k.to_string()), ring.format(p));
    }
}

fn monomials_up_to(ring: &crate::superalgebra::Ring, d: u32) -> Vec<Poly> {
    let t = Truncation { weight: None, max_weight: Some(d as i64), cochain_max: None, chain_max: None, cap: d };
    enumerate_monomials(ring, &vec![1; ring.len()], &t).0.into_iter().map(|m| Poly::monomial(m, q(1))).collect()
}

pub fn run(command: Command, text: &str, opts: &Options) -> Result<Report, CliError> {
    let spec = parse_model(text)?;
    let mut rep = Report::new(command);
    if let Some(n) = &spec.name {
        rep.put("model", n);
    }
    rep.put("seed", opts.seed);
    match command {
        Command::Normalize => {
            let once = print_model(&spec, &contexts(&spec));
            let twice = normal_form(&once)?;
            rep.require("stable", once == twice);
            rep.put("normal_form", once.trim_end());
        }
        Command::Validate => {
            let model = build_model(&spec)?;
            rep.put("generators", model.ring().len());
            rep.put("kind", format!("{:?}", model.kind));
            rep.require("q_squared_zero", true);
            rep.require("delta_squared_zero", true);
            rep.require("q_delta_anticommute", true);
            for l in &spec.lies {
                let g = l.data()?;
                rep.require(&format!("lie.{}.jacobi", l.name), g.jacobi_violation().is_none());
                let act = lie_action(&spec, l, &g, &model)?;
                if !act.is_empty() {
                    crate::constructions::chevalley_eilenberg(&g, &model, &act)?;
                    rep.require(&format!("lie.{}.action", l.name), true);
                }
            }
        }
        Command::Cohomology => {
            let model = build_model(&spec)?;
            let w = cutoff(&spec, "weight", opts.weight_cutoff, 4);
            let h = model_cohomology(&model.algebra, w, DEFAULT_DEGREE_CAP)?;
            rep.put("weight_cutoff", w);
            let (lo, hi) = opts.degree_window.unwrap_or((i64::MIN, i64::MAX));
            for (k, d) in &h.degrees {
                if (lo..=hi).contains(k) {
                    rep.put(format!("H.{k}"), d.dimension);
                }
            }
        }
        Command::Derham => {
            let model = build_model(&spec)?;
            let w = cutoff(&spec, "weight", opts.weight_cutoff, 4);
            let window = opts.degree_window.unwrap_or((
                cutoff(&spec, "window_lo", None, 0),
                cutoff(&spec, "window_hi", None, 2),
            ));
            let dr = de_rham(&model, w, window)?;
            rep.put("weight_cutoff", w);
            rep.put("degree_window", format!("{}:{}", window.0, window.1));
            for k in window.0..=window.1 {
                rep.put(format!("H.{k}"), dr.cohomology(k).dimension(k).unwrap_or(0));
            }
        }
        Command::Mc => {
            let model = build_model(&spec)?;
            let pa = poisson_algebra(&spec, &model, opts)?;
            let (name, e) = spec.poisson.first().ok_or_else(|| CliError::Input("a 'poisson' statement is required".into()))?;
            let pi = PoissonStructure::new(&pa, e.eval(pa.ring())?)?;
            let r = mc_check(&pa, &pi)?;
            rep.put("structure", name);
            rep.put("certified_upto", r.certified_upto);
            residual_table(&mut rep, "residual.weight", pa.ring(), &r.residuals);
            rep.require("maurer_cartan", r.passes);
        }
        Command::Bracket => {
            let model = build_model(&spec)?;
            let pa = poisson_algebra(&spec, &model, opts)?;
            if spec.poisson.len() < 2 {
                return Err(CliError::Input("two 'poisson' statements are required".into()));
            }
            let a = pa.wrap(spec.poisson[0].1.eval(pa.ring())?);
            let b = pa.wrap(spec.poisson[1].1.eval(pa.ring())?);
            let c = schouten(&pa, &a, &b)?;
            rep.put("pair", format!("{},{}", spec.poisson[0].0, spec.poisson[1].0));
            rep.put("bracket", pa.ring().format(&c.poly));
        }
        Command::Casimir => {
            let l = first_lie(&spec)?;
            let g = l.data()?;
            let m = build_model(&spec)?;
            let act = lie_action(&spec, l, &g, &m)?;
            let cd = cutoff(&spec, "coeff", None, 0);
            let (pa, sols) = casimir_2shifted_with(&g, &m, &act, cd)?;
            rep.put("lie", &l.name);
            rep.put("coeff_degree", cd);
            rep.put("dimension", sols.len());
            for (i, s) in sols.iter().enumerate() {
                rep.put(format!("basis.{i}"), pa.ring().format(&s.pi.poly));
            }
        }
        Command::Descent => {
            let l = first_lie(&spec)?;
            let g = l.data()?;
            let m = build_model(&spec)?;
            let act = lie_action(&spec, l, &g, &m)?;
            let cd = cutoff(&spec, "coeff", None, 0);
            let data = NerveData::new(g, m, act);
            let d = descent_2shifted_with(&data, cd)?;
            rep.put("lie", &l.name);
            rep.put("level0_dimension", d.level0.len());
            rep.put("equaliser_dimension", d.dim());
            for (i, s) in d.equaliser.iter().enumerate() {
                rep.put(format!("equaliser.{i}"), d.pa0.ring().format(&s.pi.poly));
            }
            rep.require("pullbacks_closed", d.pullbacks_closed);
        }
        Command::Bv => {
            let model = build_model(&spec)?;
            let lap = bv_laplacian(&model, &Poly::one())?;
            let ring = model.ring();
            let deg = cutoff(&spec, "weight", opts.weight_cutoff, 3).max(0) as u32;
            let monos = monomials_up_to(ring, deg);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut samples = monos.clone();
            for _ in 0..8 {
                let mut p = Poly::zero();
                for m in &monos {
                    let c: i64 = rng.gen_range(-2..=2);
                    if c != 0 {
                        p = p.add(&m.scale(&q(c)));
                    }
                }
                samples.push(p);
            }
            let (mut sq, mut anti) = (true, true);
            for p in &samples {
                let dp = lap.apply(&[p.clone()])?;
                sq &= lap.apply(&[dp.clone()])?.is_zero();
                anti &= model.algebra.delta(&dp).add(&lap.apply(&[model.algebra.delta(p)])?).is_zero();
            }
            rep.put("max_degree", deg);
            rep.put("samples", samples.len());
            rep.require("laplacian_squared_zero", sq);
            rep.require("anticommutes_with_delta", anti);
        }
        Command::Qme => {
            let model = build_model(&spec)?;
            let rdr = right_de_rham(&model, &RightConnectionData::unit_volume())?;
            let h = opts.hbar_order.unwrap_or(cutoff(&spec, "hbar", None, 2).max(0) as u32);
            let (name, e) = spec.elements.first().ok_or_else(|| CliError::Input("an 'element' statement is required".into()))?;
            let s = e.eval(rdr.ring())?;
            let terms = rdr.split_hbar(&s);
            let el = QuantisationElement::new(&rdr, h, terms)?;
            let r = qme_check(&rdr, &el)?;
            rep.put("element", name);
            rep.put("hbar_order", h);
            residual_table(&mut rep, "residual.hbar", rdr.ring(), &r.residuals);
            rep.require("quantum_master_equation", r.passes);
        }
        Command::Roundtrip => roundtrip(&spec, opts, &mut rep)?,
    }
    Ok(rep)
}

fn roundtrip(spec: &ModelSpec, opts: &Options, rep: &mut Report) -> Result<(), CliError> {
    let model = build_model(spec)?;
    let (n, rev) = shift(spec)?;
    let w = cutoff(spec, "weight", opts.weight_cutoff, 4).max(2) as usize;
    let forms = Forms::new(&model);
    if let Some((name, e)) = spec.symplectic.first() {
        let omega = PreSymplecticStructure::new(n, rev, e.eval(forms.ring())?);
        let (pa, pi) = symplectic_to_poisson(&model, &omega, w)?;
        rep.put("structure", name);
        rep.put("poisson.weight2", pa.ring().format(&pi.component(&pa, 2)));
        rep.require("maurer_cartan", mc_check(&pa, &pi)?.passes);
        let mu = pa.truncate(&mu_compat(&pa, &forms, &omega.component(2), &pi.pi.poly));
        rep.require("mu_equals_sigma", mu == sigma(&pa, &pi.pi).poly);
        let back = poisson_to_symplectic(&pa, &pi)?;
        rep.require("inverts_at_weight2", back.component(2) == omega.component(2));
    } else if let Some((name, e)) = spec.poisson.first() {
        let pa = PolyAlgebra::with_cutoff(&model, n, rev, w);
        let pi = PoissonStructure::new(&pa, e.eval(pa.ring())?)?;
        rep.put("structure", name);
        let omega = poisson_to_symplectic(&pa, &pi)?;
        rep.put("symplectic.weight2", forms.ring().format(&omega.component(2)));
        let (pa2, pi2) = symplectic_to_poisson(&model, &omega, w)?;
        rep.require("inverts_at_weight2", pi2.component(&pa2, 2) == pi.component(&pa, 2));
    } else {
        return Err(CliError::Input("a 'symplectic' or 'poisson' statement is required".into()));
    }
    Ok(())
}
