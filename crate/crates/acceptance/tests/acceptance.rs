//! Acceptance criteria 1 to 7. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request};
use axum::Router;
use clap::Parser as _;
use cnlwiki::grammar::{render, verbalize, Grammar};
use cnlwiki::lexicon::{Lexicon, WordCategory};
use cnlwiki::logic::{ast_to_drs, sentence_axiom, Axiom, AxiomKind, ClassExpr, Drs, Model};
use cnlwiki::reasoner::KnowledgeBase;
use cnlwiki::wiki::WikiState;
use cnlwiki_cli::Cli;
use cnlwiki_oracle::audit::audit_prediction;
use cnlwiki_oracle::language::Language;
use cnlwiki_oracle::owl::parse_statement;
use cnlwiki_oracle::saturation::Saturation;
use cnlwiki_oracle::semantics::{Signature, MAX_SIZE};
use cnlwiki_server::{router, AppState, REVISION_HEADER};
use http_body_util::BodyExt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("classification table", classification_table),
        ("prediction against the reference recognizer", prediction_oracle),
        ("semantics against the reference truth conditions", semantics_oracle),
        ("incremental reasoner against naive saturation", reasoner_fixpoint),
        ("ranking through POST /predict", ranking),
        ("stats arithmetic", stats_arithmetic),
        ("round trips", round_trips),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (index, (name, run)) in criteria.into_iter().enumerate() {
        let number = index + 1;
        if only.is_some_and(|n| n != number) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        let seconds = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {number} PASS {name}: {detail} [{seconds:.2}s]"),
            Err(reason) => {
                failed += 1;
                println!("criterion {number} FAIL {name}: {reason} [{seconds:.2}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn corpus_lexicon() -> Lexicon {
    use WordCategory::*;
    Lexicon::from_entries([
        (Noun, "canal"),
        (Noun, "waterbody"),
        (ProperName, "Zurich"),
        (Noun, "city"),
        (ProperName, "Bob-Dylan"),
        (Noun, "woman"),
        (ProperName, "Limmat"),
        (TransitiveVerb, "flows-through"),
        (ProperName, "Winston-Churchill"),
        (OfConstruct, "prime-minister"),
        (ProperName, "Denmark"),
        (TransitiveVerb, "protects"),
        (TransitiveVerb, "shelters"),
        (Noun, "animal"),
        (Noun, "mammal"),
        (Noun, "landscape-element"),
        (Noun, "person"),
        (TransitiveVerb, "writes"),
        (Noun, "author"),
        (Noun, "country"),
        (OfConstruct, "part"),
        (Noun, "continent"),
    ])
    .expect("corpus lexicon")
}

/// Sentence, axiom kind, triangle and full axiom text.
const TABLE: [(&str, &str, &str, &str); 11] = [
    ("every canal is a waterbody .", "SubClassOf", "blue", "SubClassOf(canal, waterbody)"),
    ("Zurich is a city .", "ClassAssertion", "blue", "ClassAssertion(city, Zurich)"),
    (
        "Bob-Dylan is not a woman .",
        "NegativeClassAssertion",
        "blue",
        "NegativeClassAssertion(woman, Bob-Dylan)",
    ),
    (
        "Limmat flows-through Zurich .",
        "RoleAssertion",
        "blue",
        "RoleAssertion(flows-through, Limmat, Zurich)",
    ),
    (
        "it is false that Winston-Churchill is a prime-minister of Denmark .",
        "NegativeRoleAssertion",
        "blue",
        "NegativeRoleAssertion(prime-minister-of, Winston-Churchill, Denmark)",
    ),
    (
        "if something X protects something Y then X shelters Y .",
        "SubRoleOf",
        "blue",
        "SubRoleOf(protects, shelters)",
    ),
    (
        "if something flows-through something Y then Y is a city .",
        "RoleRange",
        "blue",
        "RoleRange(flows-through, city)",
    ),
    ("it is false that every animal is a mammal .", "NotOwl", "red", "NotOwl"),
    (
        "a city is a landscape-element .",
        "AnonymousAssertion",
        "blue",
        "AnonymousAssertion(and(city, landscape-element))",
    ),
    (
        "every person who writes something is an author .",
        "SubClassOf",
        "blue",
        "SubClassOf(and(person, some(writes, Thing)), author)",
    ),
    (
        "every country is a part of a continent .",
        "SubClassOf",
        "blue",
        "SubClassOf(country, some(part-of, continent))",
    ),
];

fn classification_table() -> Outcome {
    let start = Instant::now();
    let lexicon = corpus_lexicon();
    let grammar = Grammar::standard();
    let mut parsed = Vec::new();
    for (text, kind, triangle, axiom_text) in TABLE {
        let (_, ast) = grammar.parse_text(text, &lexicon).map_err(|e| format!("`{text}`: {e}"))?;
        let axiom = sentence_axiom(&ast);
        ensure!(axiom.kind_name() == kind, "`{text}` is {} not {kind}", axiom.kind_name());
        ensure!(axiom.triangle() == triangle, "`{text}` is {} not {triangle}", axiom.triangle());
        ensure!(axiom.to_string() == axiom_text, "`{text}` gives {axiom}, expected {axiom_text}");
        parsed.push((text, ast, axiom));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");

    // The expected mappings are checked against the axiom notation's own
    // grammar and, for blue sentences, for equal truth in every small model.
    let mut models = 0u64;
    for (text, ast, axiom) in &parsed {
        let signature = Signature::of(ast);
        let statement = parse_statement(&axiom.to_string(), &signature);
        if !axiom.owl_compatible() {
            ensure!(statement.is_err(), "`{text}` is red but reads as an axiom");
            continue;
        }
        let statement = statement.map_err(|e| format!("`{axiom}` is not well formed: {e}"))?;
        for size in 1..=MAX_SIZE {
            let mut mismatch = None;
            signature.for_each_class(size, |i, orbit| {
                models += orbit;
                if i.holds(&statement) != i.satisfies(ast) && mismatch.is_none() {
                    mismatch = Some(format!("{i:?}"));
                }
            });
            if let Some(model) = mismatch {
                return Err(format!("`{text}` and `{axiom}` differ in {model}"));
            }
        }
    }
    Ok(format!(
        "{} sentences classified in {:.0} ms; blue mappings well formed and equivalent over {models} models",
        TABLE.len(),
        elapsed.as_secs_f64() * 1000.0
    ))
}

fn random_lexicon(rng: &mut StdRng) -> Lexicon {
    let categories = [
        WordCategory::ProperName,
        WordCategory::Noun,
        WordCategory::TransitiveVerb,
        WordCategory::OfConstruct,
    ];
    let size = rng.gen_range(1..=8);
    let mut lexicon = Lexicon::new();
    for k in 0..size {
        let category = categories[rng.gen_range(0..4)];
        let initial = if rng.gen_bool(0.5) { "o" } else { "k" };
        lexicon
            .add_word(category, &format!("{initial}w{k}"))
            .expect("generated surfaces are valid and distinct");
    }
    lexicon
}

fn prediction_oracle() -> Outcome {
    let start = Instant::now();
    let grammar = Grammar::standard();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let (mut prefixes, mut sentences, mut states, mut enumerated) = (0u128, 0u128, 0usize, 0usize);
    for n in 0..100 {
        let lexicon = random_lexicon(&mut rng);
        let audit = audit_prediction(&grammar, &lexicon, 10, 12);
        if !audit.is_clean() {
            let first = audit.dead_entries.iter().chain(&audit.missing).next().cloned().unwrap_or_default();
            return Err(format!(
                "lexicon {n}: {} dead entries, {} missing continuations, first: {first}",
                audit.dead_entries.len(),
                audit.missing.len()
            ));
        }
        // Small languages are also enumerated sentence by sentence.
        if audit.sentences <= 3000 {
            let language = Language::new(&lexicon);
            let listed = language.sentences(12);
            ensure!(
                listed.len() as u128 == audit.sentences,
                "lexicon {n}: {} sentences listed, {} counted",
                listed.len(),
                audit.sentences
            );
            for s in &listed {
                grammar
                    .parse(s, &lexicon)
                    .map_err(|e| format!("lexicon {n}: reference sentence rejected: {e}"))?;
            }
            enumerated += 1;
        }
        prefixes += audit.prefixes;
        sentences += audit.sentences;
        states += audit.states;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "100 lexicons, {prefixes} prefixes up to 10 tokens, {sentences} sentences up to 12 tokens \
         ({enumerated} lexicons listed one by one), {states} state pairs, 0 dead entries, 0 missing"
    ))
}

fn semantics_oracle() -> Outcome {
    use WordCategory::*;
    let lexicon = Lexicon::from_entries([
        (ProperName, "Ann"),
        (Noun, "man"),
        (Noun, "apple"),
        (TransitiveVerb, "likes"),
        (OfConstruct, "owner"),
    ])
    .expect("lexicon");
    let grammar = Grammar::standard();
    let sentences = Language::new(&lexicon).sentences(10);
    let (mut models, mut blue) = (0u64, 0usize);
    for tokens in &sentences {
        let text = render(tokens);
        let ast = grammar.parse(tokens, &lexicon).map_err(|e| format!("`{text}`: {e}"))?;
        let drs = ast_to_drs(&ast);
        let axiom = sentence_axiom(&ast);
        let signature = Signature::of(&ast);
        let statement = if axiom.owl_compatible() {
            blue += 1;
            Some(parse_statement(&axiom.to_string(), &signature).map_err(|e| format!("`{text}` -> {axiom}: {e}"))?)
        } else {
            None
        };
        for size in 1..=MAX_SIZE {
            let mut model = Model::new(size);
            let mut mismatch = None;
            let mut covered = 0;
            signature.for_each_class(size, |i, orbit| {
                covered += orbit;
                i.write_into(&mut model);
                let expected = i.satisfies(&ast);
                let drs_truth = model.satisfies(&drs);
                let axiom_truth = statement.as_ref().map(|s| i.holds(s)).unwrap_or(expected);
                if (drs_truth != expected || axiom_truth != expected) && mismatch.is_none() {
                    mismatch = Some(format!("{i:?}: reference {expected}, structure {drs_truth}, axiom {axiom_truth}"));
                }
            });
            if let Some(m) = mismatch {
                return Err(format!("`{text}` {drs}: {m}"));
            }
            ensure!(covered == signature.count(size), "`{text}`: enumeration missed models");
            models += covered;
        }
    }
    Ok(format!(
        "{} sentences up to 10 tokens, {models} models of 1 to {MAX_SIZE} individuals, 100% agreement \
         ({blue} blue axioms agree as well)",
        sentences.len()
    ))
}

struct Vocabulary {
    concepts: usize,
    roles: usize,
    individuals: usize,
}

impl Vocabulary {
    fn concept(&self, rng: &mut StdRng) -> String {
        format!("c{}", rng.gen_range(0..self.concepts))
    }

    fn role(&self, rng: &mut StdRng) -> String {
        format!("r{}", rng.gen_range(0..self.roles))
    }

    fn individual(&self, rng: &mut StdRng) -> String {
        format!("i{}", rng.gen_range(0..self.individuals))
    }

    fn conjunction(&self, rng: &mut StdRng) -> ClassExpr {
        let n = rng.gen_range(1..=3);
        ClassExpr::conjunction((0..n).map(|_| ClassExpr::Concept(self.concept(rng))).collect())
    }

    fn complex(&self, rng: &mut StdRng) -> ClassExpr {
        match rng.gen_range(0..3) {
            0 => ClassExpr::some(&self.role(rng), ClassExpr::Concept(self.concept(rng))),
            1 => ClassExpr::complement(ClassExpr::Concept(self.concept(rng))),
            _ => ClassExpr::and(
                ClassExpr::Concept(self.concept(rng)),
                ClassExpr::some(&self.role(rng), ClassExpr::Thing),
            ),
        }
    }

    fn axiom(&self, rng: &mut StdRng) -> Axiom {
        let kind = match rng.gen_range(0..100) {
            0..=24 => AxiomKind::SubClassOf(ClassExpr::Concept(self.concept(rng)), ClassExpr::Concept(self.concept(rng))),
            25..=29 => AxiomKind::SubClassOf(ClassExpr::Concept(self.concept(rng)), self.conjunction(rng)),
            30..=32 => AxiomKind::SubClassOf(self.complex(rng), ClassExpr::Concept(self.concept(rng))),
            33..=34 => AxiomKind::SubClassOf(ClassExpr::Concept(self.concept(rng)), self.complex(rng)),
            35..=36 => AxiomKind::DisjointClasses(self.concept(rng), self.concept(rng)),
            37..=49 => AxiomKind::ClassAssertion(ClassExpr::Concept(self.concept(rng)), self.individual(rng)),
            50..=52 => AxiomKind::ClassAssertion(
                ClassExpr::and(
                    ClassExpr::Concept(self.concept(rng)),
                    ClassExpr::SomeValue(self.role(rng), self.individual(rng)),
                ),
                self.individual(rng),
            ),
            53..=54 => AxiomKind::ClassAssertion(self.complex(rng), self.individual(rng)),
            55..=56 => AxiomKind::NegativeClassAssertion(self.concept(rng), self.individual(rng)),
            57..=71 => AxiomKind::RoleAssertion(self.role(rng), self.individual(rng), self.individual(rng)),
            72..=73 => AxiomKind::NegativeRoleAssertion(self.role(rng), self.individual(rng), self.individual(rng)),
            74..=81 => AxiomKind::SubRoleOf(self.role(rng), self.role(rng)),
            82..=86 => AxiomKind::RoleDomain(self.role(rng), self.conjunction(rng)),
            87..=91 => AxiomKind::RoleRange(self.role(rng), self.conjunction(rng)),
            92..=93 => AxiomKind::RoleRange(self.role(rng), self.complex(rng)),
            94..=96 => AxiomKind::AnonymousAssertion(self.conjunction(rng)),
            _ => AxiomKind::NotOwl(Drs::default()),
        };
        Axiom::new(kind)
    }
}

fn reasoner_fixpoint() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let (mut steps, mut facts) = (0usize, 0usize);
    for set in 0..1000 {
        let vocabulary = Vocabulary {
            concepts: rng.gen_range(1..=50),
            roles: rng.gen_range(1..=20),
            individuals: rng.gen_range(1..=30),
        };
        let mut kb = KnowledgeBase::new();
        let mut present: Vec<Axiom> = Vec::new();
        let mut history: Vec<Axiom> = Vec::new();
        let length = rng.gen_range(1..=80);
        for step in 0..length {
            let roll = rng.gen_range(0..100);
            if roll < 12 && !history.is_empty() {
                let axiom = history[rng.gen_range(0..history.len())].clone();
                let expected_present = present.contains(&axiom);
                match (kb.retract_axiom(&axiom), expected_present) {
                    (Ok(()), true) => present.retain(|a| *a != axiom),
                    (Err(_), false) => {}
                    (result, _) => return Err(format!("set {set} step {step}: retract {axiom} gave {result:?}")),
                }
            } else {
                let axiom = if roll < 18 && !history.is_empty() {
                    history[rng.gen_range(0..history.len())].clone()
                } else {
                    vocabulary.axiom(&mut rng)
                };
                if axiom.owl_compatible() && !present.contains(&axiom) {
                    present.push(axiom.clone());
                }
                history.push(axiom.clone());
                kb.assert_axiom(axiom);
            }
            steps += 1;
            let expected = Saturation::of(&present).dump();
            let actual = kb.dump();
            ensure!(
                actual == expected,
                "set {set} step {step}: derived tables differ\nincremental:\n{actual}\nsaturation:\n{expected}"
            );
            facts = facts.max(expected.lines().count());
        }
    }
    Ok(format!(
        "1000 random axiom sets, {steps} assert/retract steps, each followed by a byte-equal comparison, largest dump {facts} lines"
    ))
}

struct Reply {
    status: u16,
    revision: u64,
    body: Vec<u8>,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_slice(&self.body).unwrap_or(Value::Null)
    }
}

async fn send(app: &Router, method: Method, uri: &str, body: String, content_type: &str) -> Reply {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", content_type)
        .body(Body::from(body))
        .expect("request");
    let response = app.clone().oneshot(request).await.expect("infallible service");
    let status = response.status().as_u16();
    let revision = response.headers()[REVISION_HEADER]
        .to_str()
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(u64::MAX);
    let body = response.into_body().collect().await.expect("body").to_bytes().to_vec();
    Reply { status, revision, body }
}

async fn post(app: &Router, uri: &str, body: Value) -> Reply {
    send(app, Method::POST, uri, body.to_string(), "application/json").await
}

async fn export(app: &Router) -> Reply {
    send(app, Method::GET, "/export", String::new(), "text/plain").await
}

fn words(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

fn runtime() -> tokio::runtime::Runtime {
    tokio::runtime::Builder::new_current_thread()
        .enable_all()
        .build()
        .expect("runtime")
}

fn ranking() -> Outcome {
    runtime().block_on(async {
        let app = router(AppState::new(WikiState::new()));
        for (category, surface) in [
            ("pn", "Matterhorn"),
            ("pn", "Limmat"),
            ("pn", "Zurich"),
            ("noun", "city"),
            ("noun", "mountain"),
            ("tv", "flows-through"),
        ] {
            let reply = post(&app, "/words", json!({"category": category, "surface": surface})).await;
            ensure!(reply.status == 201, "adding {surface}: {}", reply.status);
        }
        for text in [
            "if something flows-through something Y then Y is a city .",
            "Zurich is a city .",
            "Matterhorn is a mountain .",
        ] {
            let reply = post(&app, "/sentences", json!({"tokens": words(text)})).await;
            ensure!(reply.status == 201, "adding `{text}`: {}", reply.status);
        }
        let reply = post(&app, "/predict", json!({"prefix": ["Limmat", "flows-through"]})).await;
        ensure!(reply.status == 200, "predict: {}", reply.status);
        let menu: Vec<String> = reply.json()["categoryMenus"]["pn"]
            .as_array()
            .ok_or("no proper name menu")?
            .iter()
            .filter_map(|w| w["surface"].as_str().map(str::to_string))
            .collect();
        let zurich = menu.iter().position(|s| s == "Zurich").ok_or("Zurich not offered")?;
        let matterhorn = menu.iter().position(|s| s == "Matterhorn").ok_or("Matterhorn not offered")?;
        ensure!(zurich < matterhorn, "menu order {menu:?}");
        Ok(format!("proper name menu after `Limmat flows-through`: {}", menu.join(", ")))
    })
}

/// Distinct lowercase surfaces `wa`, `wb`, ….
fn noun(k: usize) -> String {
    let mut s = String::from("w");
    let mut k = k;
    loop {
        s.push((b'a' + (k % 26) as u8) as char);
        k /= 26;
        if k == 0 {
            return s;
        }
    }
}

fn stats_arithmetic() -> Outcome {
    const TOTAL: usize = 186;
    const CORRECT: usize = 148;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut corpus = String::new();
    for k in 0..=TOTAL {
        corpus.push_str(&format!("word noun {}\n", noun(k)));
    }
    for k in 0..TOTAL {
        corpus.push_str(&format!("sentence every {} is a {} .\n", noun(k), noun(k + 1)));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut verdicts: Vec<bool> = (0..TOTAL).map(|k| k < CORRECT).collect();
    for i in (1..TOTAL).rev() {
        verdicts.swap(i, rng.gen_range(0..=i));
    }
    let labels = [("correct", "incorrect"), ("+", "-"), ("1", "0")];
    let annotations: String = verdicts
        .iter()
        .enumerate()
        .map(|(k, &ok)| {
            let (yes, no) = labels[k % 3];
            format!("{} {}\n", k + 1, if ok { yes } else { no })
        })
        .collect();
    let corpus_path = dir.path().join("corpus.txt");
    let notes_path = dir.path().join("annotations.txt");
    std::fs::write(&corpus_path, corpus).map_err(|e| e.to_string())?;
    std::fs::write(&notes_path, annotations).map_err(|e| e.to_string())?;

    let run = |format: &str| -> Result<String, String> {
        let cli = Cli::try_parse_from([
            "cnlwiki",
            "stats",
            corpus_path.to_str().unwrap(),
            "--annotations",
            notes_path.to_str().unwrap(),
            "--format",
            format,
        ])
        .map_err(|e| e.to_string())?;
        let mut out = Vec::new();
        cnlwiki_cli::run(cli, &mut out).map_err(|e| e.to_string())?;
        String::from_utf8(out).map_err(|e| e.to_string())
    };
    let kv = run("kv")?;
    let values: BTreeMap<&str, &str> = kv.lines().filter_map(|l| l.split_once(' ')).collect();
    ensure!(values.get("S") == Some(&"186"), "S line: {:?}", values.get("S"));
    ensure!(values.get("Splus") == Some(&"148"), "Splus line: {:?}", values.get("Splus"));
    let ratio: f64 = values
        .get("ratio")
        .and_then(|v| v.parse().ok())
        .ok_or("no ratio line")?;
    let close = (ratio - 0.796).abs() <= 0.0005;
    ensure!(close, "ratio {ratio}");
    let table = run("table")?;
    let shown = table
        .lines()
        .find(|l| l.starts_with("S+/S"))
        .map(|l| l.split_whitespace().last().unwrap_or_default().to_string())
        .ok_or("no S+/S row")?;
    ensure!(shown == "0.796", "table shows {shown}");
    Ok(format!("S=186, S+=148, ratio {ratio:.6} (table {shown})"))
}

const WIKI: &str = "\
word pn Zurich
word pn Matterhorn
word pn Limmat
word noun city
word noun mountain
word noun canal
word noun waterbody
word tv flows-through
word of part
sentence Zurich is a city .
sentence Matterhorn is a mountain .
sentence every canal is a waterbody .
sentence if something flows-through something Y then Y is a city .
sentence it is false that every city is a part of a mountain .
note Zurich largest city of the country
note canal man-made
";

fn round_trips() -> Outcome {
    let lexicon = corpus_lexicon();
    let grammar = Grammar::standard();
    for (text, ..) in TABLE {
        let (tokens, ast) = grammar.parse_text(text, &lexicon).map_err(|e| format!("`{text}`: {e}"))?;
        ensure!(verbalize(&ast) == tokens, "`{text}` verbalizes to different tokens");
        ensure!(render(&verbalize(&ast)) == text, "`{text}` renders differently");
    }

    let first = WikiState::import(WIKI).map_err(|e| e.to_string())?.export();
    let second = WikiState::import(&first).map_err(|e| e.to_string())?.export();
    ensure!(first == second, "export, import, export changed the text");

    let failures = runtime().block_on(async {
        let app = router(AppState::new(WikiState::import(WIKI).expect("wiki")));
        let before = export(&app).await;
        let attempts: Vec<(Method, &str, String, &str)> = vec![
            (Method::POST, "/words", json!({"category": "noun", "surface": "city"}).to_string(), "application/json"),
            (Method::POST, "/words", json!({"category": "noun", "surface": "every"}).to_string(), "application/json"),
            (Method::POST, "/words", json!({"category": "noun", "surface": "two words"}).to_string(), "application/json"),
            (Method::POST, "/sentences", json!({"tokens": words("Zurich every is .")}).to_string(), "application/json"),
            (Method::POST, "/sentences", json!({"tokens": words("Bern is a city .")}).to_string(), "application/json"),
            (
                Method::POST,
                "/sentences",
                json!({"tokens": words("every city is a canal"), "restrict": []}).to_string(),
                "application/json",
            ),
            (
                Method::POST,
                "/sentences",
                json!({"tokens": words("every city is a canal ."), "restrict": ["RoleInstance"]}).to_string(),
                "application/json",
            ),
            (Method::POST, "/sentences", "{not json".to_string(), "application/json"),
            (
                Method::PUT,
                "/sentences/1",
                json!({"tokens": words("Zurich is a canal ."), "expectedVersion": 9}).to_string(),
                "application/json",
            ),
            (
                Method::PUT,
                "/sentences/1",
                json!({"tokens": words("Zurich is canal ."), "expectedVersion": 1}).to_string(),
                "application/json",
            ),
            (
                Method::PUT,
                "/sentences/99",
                json!({"tokens": words("Zurich is a canal ."), "expectedVersion": 1}).to_string(),
                "application/json",
            ),
            (Method::DELETE, "/sentences/1?expectedVersion=9", String::new(), "text/plain"),
            (Method::DELETE, "/sentences/99?expectedVersion=1", String::new(), "text/plain"),
            (Method::DELETE, "/words/Zurich", String::new(), "text/plain"),
            (Method::DELETE, "/words/Bern", String::new(), "text/plain"),
            (Method::POST, "/import", "word noun x\nsentence x is .\n".to_string(), "text/plain"),
            (Method::POST, "/import", "word noun city\nword pn city\n".to_string(), "text/plain"),
        ];
        let mut checked = 0;
        for (method, uri, body, content_type) in attempts {
            let label = format!("{method} {uri} {body}");
            let reply = send(&app, method, uri, body, content_type).await;
            if !(400..500).contains(&reply.status) {
                return Err(format!("{label}: status {}", reply.status));
            }
            let after = export(&app).await;
            if after.body != before.body || after.revision != before.revision {
                return Err(format!("{label}: export or revision changed"));
            }
            checked += 1;
        }
        Ok(checked)
    })?;
    Ok(format!(
        "{} corpus sentences verbalize to themselves; export/import/export identical; {failures} rejected mutations left the export unchanged",
        TABLE.len()
    ))
}
