use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hopfcat::coalg::cofree_factorization;
use hopfcat::fixtures::free_category_on;
use hopfcat::format::{check_document, parse_document, write_document, Document, MorphismBody};
use hopfcat::free_hopf::{free_hopf_truncated_with, LetterSource, Method, TruncatedFreeHopf};
use hopfcat::groupoid::{core_groupoid, free_groupoid_words, linearize, linearize_groupoid, FinGraph};
use hopfcat::hopf::{flatten_weak_hopf, solve_antipode, AntipodeResult, HopfCategory};
use hopfcat::modflat::{flatness_test_finite_ring, is_jointly_monic, ModMap};
use hopfcat::vcat::{free_semihopf_truncated, free_vcategory_truncated, variant, CoalgebraGraph, Variant};
use hopfcat::vgraph::{jointly_monic, VGraph, VGraphMorphism};
use hopfcat::{Field, Scalar};

use crate::{Command, GroupoidCommand, MethodArg, Which};

pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<hopfcat::Error> for CliError {
    fn from(e: hopfcat::Error) -> Self {
        CliError(e.to_string())
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn fail<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError(msg.into()))
}

pub fn init_threads() -> Res<()> {
    let Ok(v) = std::env::var("HOPFCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError(format!("HOPFCAT_THREADS must be a positive integer, got `{v}`")))?;
    if n == 0 {
        return fail("HOPFCAT_THREADS must be a positive integer, got `0`");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError(e.to_string()))
}

fn load(path: &Path) -> Res<Document> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Writes next to the destination, then renames over it.
fn write_atomic(path: &Path, text: &str) -> Res<()> {
    let io = |e: std::io::Error| CliError(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(text.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn emit(doc: &Document, output: Option<&Path>) -> Res<()> {
    let text = write_document(doc);
    match output {
        Some(p) => {
            write_atomic(p, &text)?;
            eprintln!("wrote {} ({})", p.display(), doc.kind());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn field_arg(s: &str) -> Res<Field> {
    Ok(s.parse()?)
}

fn vgraph_of(doc: &Document, field: Field) -> Res<VGraph> {
    match doc {
        Document::Graph(g) => Ok(g.to_vgraph(field)),
        d => d
            .vgraph()
            .cloned()
            .ok_or_else(|| CliError(format!("expected a graph-like document, got {}", d.kind()))),
    }
}

fn vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn run(command: Command) -> Res<u8> {
    match command {
        Command::Check { file } => check(&file),
        Command::Antipode { file, output } => antipode(&file, output.as_deref()),
        Command::Variant { file, which, output } => variant_cmd(&file, which, output.as_deref()),
        Command::FreeCat { file, max_len } => free_cat(&file, max_len),
        Command::FreeShopf { file, max_len } => free_shopf(&file, max_len),
        Command::FreeHopf {
            file,
            max_len,
            max_index,
            method,
            words,
        } => free_hopf(&file, max_len, max_index.unwrap_or(max_len), method, words),
        Command::CofreeFactor { coalgebra, map, output } => cofree(&coalgebra, &map, output.as_deref()),
        Command::Flatten { file } => flatten(&file),
        Command::Groupoid(g) => groupoid(g),
        Command::FlatTest { module } => flat_test(&module),
        Command::JointlyMonic { maps } => jointly_monic_cmd(&maps),
        Command::OracleCompare {
            graph,
            max_len,
            max_index,
            field,
        } => oracle_compare(&graph, max_len, max_index, field_arg(&field)?),
    }
}

fn check(file: &Path) -> Res<u8> {
    let doc = load(file)?;
    let lines = check_document(&doc)?;
    if lines.is_empty() {
        println!("{}: ok", doc.kind());
        return Ok(0);
    }
    println!("{}: {} violation(s)", doc.kind(), lines.len());
    for l in lines {
        println!("  {l}");
    }
    Ok(1)
}

fn semihopf_input(doc: &Document) -> Res<hopfcat::vcat::SemiHopfCategory> {
    doc.semihopf()
        .cloned()
        .ok_or_else(|| CliError(format!("expected a semihopf or hopf document, got {}", doc.kind())))
}

/// Prints axiom violations of the input; true when there are none.
fn input_valid(doc: &Document) -> Res<bool> {
    let lines = check_document(doc)?;
    if !lines.is_empty() {
        println!("input violates the axioms:");
        for l in &lines {
            println!("  {l}");
        }
    }
    Ok(lines.is_empty())
}

fn antipode(file: &Path, output: Option<&Path>) -> Res<u8> {
    let doc = load(file)?;
    let a = semihopf_input(&doc)?;
    if !input_valid(&Document::SemiHopf(a.clone()))? {
        return Ok(1);
    }
    let names = a.graph().objects().to_vec();
    match solve_antipode(&a)? {
        AntipodeResult::Solved(s) => {
            emit(&Document::Hopf(HopfCategory::new(a, s)?), output)?;
            Ok(0)
        }
        AntipodeResult::Inconsistent(certs) => {
            println!("no antipode: {} inconsistent system(s)", certs.len());
            for c in certs {
                println!(
                    "  S({}, {}): functional {} annihilates the equations but not the right-hand side",
                    names[c.x],
                    names[c.y],
                    vector(&c.functional)
                );
            }
            Ok(1)
        }
        AntipodeResult::Underdetermined(pairs) => {
            println!("antipode not unique");
            for (x, y) in pairs {
                println!("  S({}, {}) has a nonzero homogeneous solution", names[x], names[y]);
            }
            Ok(1)
        }
    }
}

fn variant_cmd(file: &Path, which: Which, output: Option<&Path>) -> Res<u8> {
    let doc = load(file)?;
    let a = semihopf_input(&doc)?;
    let which = match which {
        Which::Op => Variant::Op,
        Which::Cop => Variant::Cop,
        Which::Opcop => Variant::OpCop,
    };
    let v = variant(&a, which);
    let out = match doc {
        // the variant of a Hopf category keeps an antipode only when one exists
        Document::Hopf(_) => match solve_antipode(&v)? {
            AntipodeResult::Solved(s) => Document::Hopf(HopfCategory::new(v, s)?),
            _ => {
                eprintln!("note: the variant has no antipode; writing a semihopf document");
                Document::SemiHopf(v)
            }
        },
        _ => Document::SemiHopf(v),
    };
    emit(&out, output)?;
    Ok(0)
}

fn free_cat(file: &Path, max_len: usize) -> Res<u8> {
    let g = vgraph_of(&load(file)?, Field::Rational)?;
    let f = free_vcategory_truncated(&g, max_len);
    let names = g.objects();
    for (x, y) in g.pairs() {
        for len in 0..=max_len {
            println!("hom({}, {}) length {len}: {}", names[x], names[y], f.bucket_dim(x, y, len));
        }
    }
    Ok(0)
}

fn coalgebra_graph(doc: &Document) -> Res<CoalgebraGraph> {
    match doc.semihopf() {
        Some(a) => Ok(CoalgebraGraph::new(a.graph().clone(), a.coalgebras().to_vec())?),
        None => Ok(CoalgebraGraph::grouplike(vgraph_of(doc, Field::Rational)?)),
    }
}

fn free_shopf(file: &Path, max_len: usize) -> Res<u8> {
    let cg = coalgebra_graph(&load(file)?)?;
    let f = free_semihopf_truncated(&cg, max_len);
    let names = cg.graph().objects();
    for (x, y) in cg.graph().pairs() {
        for len in 0..=max_len {
            println!("hom({}, {}) length {len}: {}", names[x], names[y], f.cat().bucket_dim(x, y, len));
        }
    }
    report_lines(&f.check().sorted().render(names))
}

fn report_lines(lines: &[String]) -> Res<u8> {
    if lines.is_empty() {
        println!("check: ok");
        return Ok(0);
    }
    println!("check: {} violation(s)", lines.len());
    for l in lines {
        println!("  {l}");
    }
    Ok(1)
}

fn free_hopf(file: &Path, max_len: usize, i_max: usize, method: MethodArg, words: bool) -> Res<u8> {
    let doc = load(file)?;
    let method = match method {
        MethodArg::Auto => Method::Auto,
        MethodArg::Echelon => Method::Echelon,
    };
    let h = match doc.semihopf() {
        Some(a) => {
            if !input_valid(&doc)? {
                return Ok(1);
            }
            free_hopf_truncated_with(a, max_len, i_max, method)?
        }
        None => {
            let source = free_semihopf_truncated(&coalgebra_graph(&doc)?, max_len);
            free_hopf_truncated_with(&source, max_len, i_max, method)?
        }
    };
    print_free_hopf(&h, words);
    report_lines(&h.validate().sorted().render(h.objects()))
}

fn print_free_hopf(h: &TruncatedFreeHopf, words: bool) {
    println!(
        "free Hopf category: weight <= {}, letter indices <= {}, {} letters, {} relations",
        h.max_len(),
        h.i_max(),
        h.letters().len(),
        h.generator_count()
    );
    println!("quotient dimensions are truncated upper bounds");
    let names = h.objects();
    for b in h.bucket_report() {
        println!(
            "hom({}, {}) weight {}: {} words, quotient {}",
            names[b.x], names[b.y], b.len, b.words, b.quotient
        );
    }
    if words {
        let n = h.len();
        for x in 0..n {
            for y in 0..n {
                for idx in h.basis(x, y) {
                    println!("basis({}, {}): {}", names[x], names[y], h.render_word(x, y, idx));
                }
            }
        }
    }
}

fn cofree(coalgebra: &Path, map: &Path, output: Option<&Path>) -> Res<u8> {
    let Document::Coalgebra(c) = load(coalgebra)? else {
        return fail(format!("{}: expected a coalgebra document", coalgebra.display()));
    };
    let Document::Morphism(m) = load(map)? else {
        return fail(format!("{}: expected a morphism document", map.display()));
    };
    let MorphismBody::Linear(gamma) = m.body else {
        return fail(format!("{}: expected a linear map", map.display()));
    };
    if !input_valid(&Document::Coalgebra(c.clone()))? {
        return Ok(1);
    }
    let f = cofree_factorization(&c, &gamma)?;
    println!("source dimension: {}", c.dim());
    println!("largest coideal in ker γ: dimension {}", f.kernel.dim());
    println!("image coalgebra: dimension {}", f.image.dim());
    println!("components used: γ_0..γ_{}", f.components.len() - 1);
    let monic = f.is_jointly_monic();
    println!("components jointly monic on the image: {}", if monic { "yes" } else { "no" });
    if let Some(p) = output {
        emit(&Document::Coalgebra(f.image), Some(p))?;
    }
    Ok(if monic { 0 } else { 1 })
}

fn flatten(file: &Path) -> Res<u8> {
    let doc = load(file)?;
    let a = semihopf_input(&doc)?;
    let s = match &doc {
        Document::Hopf(h) => Some(h.antipode().clone()),
        _ => None,
    };
    let (data, report) = flatten_weak_hopf(&a, s.as_ref())?;
    println!("flattened dimension: {}", data.dim);
    println!("{}", hopfcat::hopf::WeakReport::HEADER);
    for (name, ok) in &report.checks {
        println!("  {name}: {}", if *ok { "holds" } else { "fails" });
    }
    println!("Δ(1) = 1 ⊗ 1: {}", if report.weak { "no" } else { "yes" });
    Ok(if report.all_hold() { 0 } else { 1 })
}

fn graph_input(path: &Path) -> Res<FinGraph> {
    match load(path)? {
        Document::Graph(g) => Ok(g),
        d => fail(format!("{}: expected a graph document, got {}", path.display(), d.kind())),
    }
}

fn groupoid(cmd: GroupoidCommand) -> Res<u8> {
    match cmd {
        GroupoidCommand::Free { graph, max_len } => {
            let g = graph_input(&graph)?;
            let words = free_groupoid_words(&g, max_len);
            let n = g.vertices().len();
            for x in 0..n {
                for y in 0..n {
                    for (len, ws) in words[x * n + y].iter().enumerate() {
                        println!("{} -> {} length {len}: {}", g.vertices()[x], g.vertices()[y], ws.len());
                    }
                }
            }
            Ok(0)
        }
        GroupoidCommand::Words { graph, max_len } => {
            let g = graph_input(&graph)?;
            let words = free_groupoid_words(&g, max_len);
            let n = g.vertices().len();
            for x in 0..n {
                for y in 0..n {
                    for ws in &words[x * n + y] {
                        for w in ws {
                            println!("{} -> {}: {}", g.vertices()[x], g.vertices()[y], w.render(&g));
                        }
                    }
                }
            }
            Ok(0)
        }
        GroupoidCommand::Core { category, output } => {
            let Document::FinCategory(c) = load(&category)? else {
                return fail(format!("{}: expected a fincategory document", category.display()));
            };
            emit(&Document::FinCategory(core_groupoid(&c)), output.as_deref())?;
            Ok(0)
        }
        GroupoidCommand::Linearize { category, field, output } => {
            let Document::FinCategory(c) = load(&category)? else {
                return fail(format!("{}: expected a fincategory document", category.display()));
            };
            let field = field_arg(&field)?;
            let doc = if c.is_groupoid() {
                let (a, s) = linearize_groupoid(&c, field)?;
                Document::Hopf(HopfCategory::new(a, s)?)
            } else {
                Document::SemiHopf(linearize(&c, field))
            };
            emit(&doc, output.as_deref())?;
            Ok(0)
        }
    }
}

fn flat_test(path: &Path) -> Res<u8> {
    let Document::FgModule(m) = load(path)? else {
        return fail(format!("{}: expected an fgmodule document", path.display()));
    };
    let r = flatness_test_finite_ring(&m)?;
    match r.witness {
        None => {
            println!("{m} over {}: flat", m.ring());
            Ok(0)
        }
        Some((d, w)) => {
            let w: Vec<String> = w.iter().map(ToString::to_string).collect();
            println!("{m} over {}: not flat", m.ring());
            println!("  ({d}) ⊗ M → M kills the nonzero element [{}]", w.join(", "));
            Ok(1)
        }
    }
}

fn jointly_monic_cmd(paths: &[PathBuf]) -> Res<u8> {
    let mut modules: Vec<ModMap> = Vec::new();
    let mut graphs: Vec<VGraphMorphism> = Vec::new();
    for p in paths {
        let Document::Morphism(m) = load(p)? else {
            return fail(format!("{}: expected a morphism document", p.display()));
        };
        match m.body {
            MorphismBody::Module(f) => modules.push(f),
            MorphismBody::Graph(f) => graphs.push(f),
            MorphismBody::Linear(_) => return fail(format!("{}: expected a module map or V-graph morphism", p.display())),
        }
    }
    match (modules.is_empty(), graphs.is_empty()) {
        (false, true) => {
            let r = is_jointly_monic(modules[0].source(), &modules)?;
            if r.monic {
                println!("jointly monic");
                return Ok(0);
            }
            let w: Vec<String> = r.witness.unwrap_or_default().iter().map(ToString::to_string).collect();
            println!("not jointly monic: [{}] is nonzero and sent to zero by every map", w.join(", "));
            Ok(1)
        }
        (true, false) => {
            let src = graphs[0].source();
            if graphs.iter().any(|g| g.source() != src) {
                return fail("the morphisms do not share a source");
            }
            let monic = jointly_monic(&graphs);
            println!("{}", if monic { "jointly monic" } else { "not jointly monic" });
            Ok(if monic { 0 } else { 1 })
        }
        _ => fail("cannot mix module maps and V-graph morphisms"),
    }
}

fn oracle_compare(path: &Path, max_len: usize, i_max: usize, field: Field) -> Res<u8> {
    let g = graph_input(path)?;
    let source = free_category_on(&g, field, max_len);
    let h = free_hopf_truncated_with(&source, max_len, i_max, Method::Auto)?;
    let words = free_groupoid_words(&g, max_len);
    let n = g.vertices().len();
    let names = LetterSource::objects(&source).to_vec();
    let mut mismatches = 0;
    let mut buckets = 0;
    for x in 0..n {
        for y in 0..n {
            for len in 0..=max_len {
                let (d, w) = (h.bucket_dim(x, y, len), words[x * n + y][len].len());
                buckets += 1;
                let verdict = if d == w { "equal" } else { "MISMATCH" };
                if d != w {
                    mismatches += 1;
                }
                println!("hom({}, {}) length {len}: free Hopf {d}, reduced words {w}: {verdict}", names[x], names[y]);
            }
        }
    }
    let validation = h.validate();
    if mismatches == 0 && validation.is_ok() {
        println!("all {buckets} buckets equal");
        Ok(0)
    } else {
        println!("{mismatches} of {buckets} buckets differ");
        for l in validation.sorted().render(&names) {
            println!("  {l}");
        }
        Ok(1)
    }
}
