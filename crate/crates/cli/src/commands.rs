//! One function per subcommand. Each appends results to the report as it
//! goes, so a failure still leaves everything computed before it.

use std::fs;
use std::path::{Path, PathBuf};

use gmunn::actions::{characteristic_congruence, SupportedAction};
use gmunn::congruence::{is_fundamental, mu, Congruence};
use gmunn::format::{parse_any, write_isg, write_munn_sidecar, write_psh, write_top, Document};
use gmunn::munn::{
    check_action_roundtrip, generalized_munn, generalized_munn_representation, munn_representation, munn_semigroup,
    verify_theorem_d_roundtrip, MunnSemigroup, Representation,
};
use gmunn::presheaf::{Presheaf, Semilattice};
use gmunn::topology::{
    injective_opens, is_sober, la_semigroup, members, partial_homeo_semigroup, prop_e_check, section_images_form_basis,
    sections_presheaf, sober_report, theorem_f_check, EtaleBundle, FiniteSpace,
};
use gmunn::zoo::{particular_point_space, six_point_presheaf, standard_example, StandardExample};
use gmunn::{InverseSemigroup, Limits};

use crate::report::{sha256_hex, Failure, Report};

pub type Outcome = Result<(), Failure>;

/// Shared state of one invocation.
pub struct Context {
    pub report: Report,
    pub limits: Limits,
    pub out: Option<PathBuf>,
}

impl Context {
    fn load(&mut self, path: &Path) -> Result<Document, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
        self.report.input(&path.display().to_string(), &bytes);
        let text = String::from_utf8(bytes).map_err(|_| Failure::parse(format!("{} is not UTF-8", path.display())))?;
        Ok(parse_any(&text)?)
    }

    /// Writes `text` to `path`, or inlines it into the report when there is
    /// no destination.
    fn emit(&mut self, key: &str, path: Option<PathBuf>, text: &str) -> Outcome {
        match path {
            Some(p) => {
                fs::write(&p, text).map_err(|e| Failure::validation(format!("cannot write {}: {e}", p.display())))?;
                self.report.put(&format!("{key}_file"), p.display().to_string());
                self.report.put(&format!("{key}_sha256"), sha256_hex(text.as_bytes()));
            }
            None => self.report.put(key, text),
        }
        Ok(())
    }

    fn sibling(&self, extension: &str) -> Option<PathBuf> {
        self.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(extension);
            PathBuf::from(s)
        })
    }
}

fn wrong_kind(expected: &str, doc: &Document) -> Failure {
    Failure::parse(format!("expected {expected}, got {} v1", doc.kind()))
}

fn semigroup(doc: Document) -> Result<InverseSemigroup, Failure> {
    match doc {
        Document::Semigroup(s) => Ok(s),
        other => Err(wrong_kind("isg v1", &other)),
    }
}

fn action(doc: Document) -> Result<SupportedAction, Failure> {
    match doc {
        Document::Action(a) => Ok(a),
        other => Err(wrong_kind("act v1", &other)),
    }
}

fn open_set(u: u32) -> String {
    format!("{{{}}}", members(u).map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn opens(list: &[u32]) -> Vec<String> {
    list.iter().map(|&u| open_set(u)).collect()
}

fn put_congruence(r: &mut Report, key: &str, c: &Congruence) {
    r.put(&format!("{key}_classes"), c.num_classes());
    r.put(key, c.classof().to_vec());
    r.put(&format!("{key}_is_equality"), c.is_equality());
}

pub fn validate(ctx: &mut Context, file: &Path) -> Outcome {
    let doc = ctx.load(file)?;
    ctx.report.put("format", doc.kind());
    ctx.report.put("valid", true);
    Ok(())
}

pub fn info(ctx: &mut Context, file: &Path) -> Outcome {
    match ctx.load(file)? {
        Document::Semigroup(s) => {
            let r = &mut ctx.report;
            r.put("format", "isg");
            r.put("size", s.len());
            r.put("idempotents", s.idempotents().to_vec());
            r.put("group", s.is_group());
            r.put("semilattice", s.is_semilattice());
            r.put("clifford", s.is_clifford());
            r.put("commutative", s.is_commutative());
            r.put("fundamental", is_fundamental(&s));
        }
        Document::Presheaf(p) => {
            let r = &mut ctx.report;
            r.put("format", "psh");
            r.put("lattice_size", p.lattice().len());
            r.put("carrier", p.len());
            r.put("fiber_sizes", (0..p.lattice().len()).map(|e| p.fiber(e).len()).collect::<Vec<_>>());
            r.put("global", p.is_global());
        }
        Document::Action(a) => {
            let r = &mut ctx.report;
            r.put("format", "act");
            r.put("semigroup_size", a.semigroup().len());
            r.put("carrier", a.len());
            r.put("global", a.is_global());
        }
        Document::Space(x) => {
            let r = &mut ctx.report;
            r.put("format", "top");
            r.put("points", x.points());
            r.put("opens", x.opens().len());
            r.put("t0", x.is_t0());
            r.put("sober", is_sober(&x));
        }
        Document::Bundle(b) => {
            let r = &mut ctx.report;
            r.put("format", "bun");
            r.put("total_points", b.total().points());
            r.put("base_points", b.base().points());
            r.put("base_sober", is_sober(b.base()));
            r.put("injective_opens", opens(&injective_opens(&b)));
        }
    }
    Ok(())
}

pub fn mu_cmd(ctx: &mut Context, file: &Path) -> Outcome {
    let s = semigroup(ctx.load(file)?)?;
    let r = &mut ctx.report;
    r.put("size", s.len());
    put_congruence(r, "mu", &mu(&s));
    r.put("fundamental", is_fundamental(&s));
    r.put("centralizer", s.centralizer_of_idempotents());
    Ok(())
}

fn emit_munn(ctx: &mut Context, t: &MunnSemigroup) -> Outcome {
    ctx.report.put("size", t.len());
    ctx.report.put("idempotents", t.semigroup().idempotents().len());
    ctx.emit("table", ctx.out.clone(), &write_isg(t.semigroup()))?;
    ctx.emit("sidecar", ctx.sibling(".elements"), &write_munn_sidecar(t))
}

/// `T_E` of the idempotents of a semigroup.
pub fn munn(ctx: &mut Context, file: &Path) -> Outcome {
    let s = semigroup(ctx.load(file)?)?;
    let lattice = Semilattice::of_idempotents(&s);
    ctx.report.put("lattice_size", lattice.len());
    let t = munn_semigroup(&lattice, &ctx.limits)?;
    emit_munn(ctx, &t)
}

/// `T_X` of a presheaf, or of the presheaf underlying an action.
pub fn gmunn(ctx: &mut Context, file: &Path) -> Outcome {
    let p: Presheaf = match ctx.load(file)? {
        Document::Presheaf(p) => p,
        Document::Action(a) => a.restrict_to_idempotents(),
        other => return Err(wrong_kind("psh v1 or act v1", &other)),
    };
    ctx.report.put("carrier", p.len());
    ctx.report.put("lattice_size", p.lattice().len());
    let t = generalized_munn(&p, &ctx.limits)?;
    emit_munn(ctx, &t)
}

fn put_representation(r: &mut Report, rep: &Representation) {
    r.put("target_size", rep.target.len());
    r.put("map", rep.map.clone());
    r.put("is_hom", rep.report.is_hom);
    r.put("idempotent_separating", rep.report.is_idempotent_separating);
    r.put("image_wide", rep.report.image_is_wide);
    r.put("injective", rep.report.is_injective);
    if let Some(k) = &rep.report.kernel {
        put_congruence(r, "kernel", k);
    }
}

/// `δ` for a semigroup, `ξ` for an action.
pub fn repr(ctx: &mut Context, file: &Path) -> Outcome {
    match ctx.load(file)? {
        Document::Semigroup(s) => {
            let rep = munn_representation(&s, &ctx.limits)?;
            ctx.report.put("representation", "delta");
            put_representation(&mut ctx.report, &rep);
            ctx.report.put("kernel_is_mu", rep.report.kernel.as_ref() == Some(&mu(&s)));
        }
        Document::Action(a) => {
            let rep = generalized_munn_representation(&a, &ctx.limits)?;
            ctx.report.put("representation", "xi");
            put_representation(&mut ctx.report, &rep);
            ctx.report.put("kernel_is_rho", rep.report.kernel.as_ref() == Some(&characteristic_congruence(&a)));
        }
        other => return Err(wrong_kind("isg v1 or act v1", &other)),
    }
    Ok(())
}

pub fn char_cong(ctx: &mut Context, file: &Path) -> Outcome {
    let a = action(ctx.load(file)?)?;
    let rho = characteristic_congruence(&a);
    let r = &mut ctx.report;
    put_congruence(r, "rho", &rho);
    r.put("idempotent_separating", rho.is_idempotent_separating(a.semigroup()));
    r.put("global", a.is_global());
    Ok(())
}

/// `ξ` is a wide idempotent-separating homomorphism whose kernel is `ρ_X`
/// when `ρ_X` separates idempotents, and global support forces that.
pub fn theorem_c(ctx: &mut Context, file: &Path) -> Outcome {
    let a = action(ctx.load(file)?)?;
    let rep = generalized_munn_representation(&a, &ctx.limits)?;
    let rho = characteristic_congruence(&a);
    let separating = rho.is_idempotent_separating(a.semigroup());
    let kernel_ok = !separating || rep.report.kernel.as_ref() == Some(&rho);
    let global_ok = !a.is_global() || separating;
    let r = &mut ctx.report;
    r.put("is_hom", rep.report.is_hom);
    r.put("idempotent_separating", rep.report.is_idempotent_separating);
    r.put("image_wide", rep.report.image_is_wide);
    r.put("rho_idempotent_separating", separating);
    r.put("kernel_is_rho", kernel_ok);
    r.put("global", a.is_global());
    r.put("global_implies_separating", global_ok);
    let passed = rep.report.is_hom && rep.report.is_idempotent_separating && rep.report.image_is_wide && kernel_ok && global_ok;
    r.put("passed", passed);
    if passed {
        Ok(())
    } else {
        Err(Failure::validation("representation check failed"))
    }
}

/// With an action: `ξ` then back reproduces it. With a semigroup and a
/// presheaf: every qualifying homomorphism and its action round-trip.
pub fn theorem_d(ctx: &mut Context, files: &[PathBuf]) -> Outcome {
    let passed = match files {
        [one] => {
            let a = action(ctx.load(one)?)?;
            check_action_roundtrip(&a, &ctx.limits)?
        }
        [first, second] => {
            let s = semigroup(ctx.load(first)?)?;
            let p = match ctx.load(second)? {
                Document::Presheaf(p) => p,
                other => return Err(wrong_kind("psh v1", &other)),
            };
            let rep = verify_theorem_d_roundtrip(&s, &p, &ctx.limits)?;
            ctx.report.put("homs", rep.homs);
            ctx.report.put("hom_failures", rep.hom_failures.len());
            ctx.report.put("action_failures", rep.action_failures.clone());
            rep.passed()
        }
        _ => return Err(Failure::parse("theorem-d takes an action file, or a semigroup file and a presheaf file")),
    };
    ctx.report.put("passed", passed);
    if passed {
        Ok(())
    } else {
        Err(Failure::validation("round trip failed"))
    }
}

pub fn topo(ctx: &mut Context, file: &Path) -> Outcome {
    let x = match ctx.load(file)? {
        Document::Space(x) => x,
        other => return Err(wrong_kind("top v1", &other)),
    };
    let sober = sober_report(&x);
    let r = &mut ctx.report;
    r.put("points", x.points());
    r.put("opens", x.opens().len());
    r.put("t0", sober.t0);
    r.put("sober", sober.sober);
    r.put("completely_prime_filters", opens(&sober.filters));
    r.put("unmatched_filters", opens(&sober.unmatched));
    r.put("shared_filters", opens(&sober.shared));
    let (s, _) = partial_homeo_semigroup(&x, &ctx.limits)?;
    let r = &mut ctx.report;
    r.put("partial_homeomorphisms", s.len());
    r.put("partial_homeomorphism_idempotents", s.idempotents().len());
    r.put("fundamental", is_fundamental(&s));
    if !sober.sober {
        r.put("omega_munn_iso", "skipped: not sober");
        return Ok(());
    }
    let e = prop_e_check(&x, &ctx.limits)?;
    let r = &mut ctx.report;
    r.put("omega_munn_size", e.munn_size);
    r.put("delta_is_iso", e.delta_is_iso);
    r.put("reconstruction_ok", e.reconstruction_ok);
    r.put("omega_munn_iso", e.passed());
    if e.passed() {
        Ok(())
    } else {
        Err(Failure::validation("sober space whose partial homeomorphisms are not T of its opens"))
    }
}

pub fn bundle(ctx: &mut Context, file: &Path) -> Outcome {
    let b: EtaleBundle = match ctx.load(file)? {
        Document::Bundle(b) => b,
        other => return Err(wrong_kind("bun v1", &other)),
    };
    let (gamma, secs) = sections_presheaf(&b, &ctx.limits)?;
    let r = &mut ctx.report;
    r.put("sections", secs.len());
    r.put("gamma_global", gamma.is_global());
    r.put("section_images_basis", section_images_form_basis(&b, &secs));
    let (la, _) = la_semigroup(&b, &ctx.limits)?;
    ctx.report.put("la_size", la.len());
    if !is_sober(b.base()) {
        ctx.report.put("la_munn_iso", "skipped: base not sober");
        return Ok(());
    }
    let f = theorem_f_check(&b, &ctx.limits)?;
    let r = &mut ctx.report;
    r.put("gamma_munn_size", f.munn_size);
    r.put("xi_is_iso", f.xi_is_iso);
    r.put("characteristic_is_equality", f.characteristic_is_equality);
    r.put("reconstruction_ok", f.reconstruction_ok);
    r.put("la_munn_iso", f.passed());
    if f.passed() {
        Ok(())
    } else {
        Err(Failure::validation("sections semigroup is not T of the sections presheaf"))
    }
}

/// Names accepted by `gen` beyond the standard examples.
pub const EXTRA_KINDS: [&str; 2] = ["particular_point_space", "six_point_presheaf"];

pub fn gen(ctx: &mut Context, kind: &str, n: Option<usize>) -> Outcome {
    ctx.report.put("kind", kind);
    let out = ctx.out.clone();
    match kind {
        "six_point_presheaf" => ctx.emit("presheaf", out, &write_psh(&six_point_presheaf())),
        "particular_point_space" => {
            let n = n.unwrap_or(3);
            ctx.report.put("n", n);
            ctx.emit("space", out, &write_top(&space(n)?))
        }
        _ => {
            let k: StandardExample = kind.parse().map_err(|_| {
                let mut names: Vec<&str> = StandardExample::ALL.iter().map(|k| k.name()).collect();
                names.extend(EXTRA_KINDS);
                Failure::parse(format!("unknown example '{kind}' (known: {})", names.join(", ")))
            })?;
            let n = n.ok_or_else(|| Failure::parse(format!("{kind} needs a size")))?;
            ctx.report.put("n", n);
            let s = standard_example(k, n, &ctx.limits)?;
            ctx.report.put("size", s.len());
            ctx.emit("table", out, &write_isg(&s))?;
            if k == StandardExample::ParticularPointHomeos {
                ctx.emit("space", ctx.sibling(".top"), &write_top(&space(n)?))?;
            }
            Ok(())
        }
    }
}

fn space(n: usize) -> Result<FiniteSpace, Failure> {
    if n == 0 || n > 16 {
        return Err(Failure::parse("particular point space needs 1 to 16 points"));
    }
    Ok(particular_point_space(n)?)
}
