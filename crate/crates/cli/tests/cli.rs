use std::fs;
use std::path::{Path, PathBuf};

use hexfa::automata::{catalog, parse_automaton, serialize_automaton};
use hexfa::hexgrid::{parse_picture, serialize_picture};
use hexfa::langtools::{bounded_equivalent, random_pool, RandomSpec, SizeBound};
use hexfa::{AutomatonKind, DirectionMode, HexAutomaton, HexPicture, HexSize, Symbol, SymmetryOp};
use hexfa_cli::dispatch;
use tempfile::TempDir;

const B: AutomatonKind = AutomatonKind::Boustrophedon;
const R: AutomatonKind = AutomatonKind::Returning;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn hexfa(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hexfa").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn ab() -> Vec<Symbol> {
    vec![Symbol::new("a").unwrap(), Symbol::new("b").unwrap()]
}

fn picture(l: u32, m: u32, n: u32, tokens: &str) -> HexPicture {
    let size = HexSize::new(l, m, n).unwrap();
    let cells = tokens
        .split_whitespace()
        .map(|t| Symbol::new(t).unwrap())
        .collect();
    HexPicture::from_cells(size, cells).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn automaton(&self, name: &str, a: &HexAutomaton) -> String {
        self.put(name, &serialize_automaton(a))
    }

    fn picture(&self, name: &str, p: &HexPicture) -> String {
        self.put(name, &serialize_picture(p))
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn text(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn render_with_border() {
    let f = Files::new();
    let p = f.picture("p.hxp", &picture(2, 2, 2, "a b a b a b a"));
    let r = hexfa(&["render", "--border", &p]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "  # # #\n # a b #\n# a b a #\n # b a #\n  # # #\n");
    assert_eq!(hexfa(&["render", &p]).out, " a b\na b a\n b a\n");
}

#[test]
fn six_quarter_turns_are_the_identity() {
    let f = Files::new();
    let original = picture(1, 2, 3, "a b c d e f");
    let mut path = f.picture("p0.hxp", &original);
    for i in 1..=6 {
        let r = hexfa(&["transform", "--op", "R1", &path]);
        assert_eq!(r.code, 0, "{}", r.err);
        path = f.put(&format!("p{i}.hxp"), &r.out);
    }
    assert_eq!(parse_picture(&text(Path::new(&path))).unwrap(), original);
}

#[test]
fn trace_has_one_line_per_symbol() {
    let f = Files::new();
    let p = picture(3, 3, 3, &["a"; 19].join(" "));
    let pic = f.picture("p.hxp", &p);
    let all = f.automaton("all.hxa", &catalog::accept_all(B, &ab()));
    for code in ["B:R0", "B:r3", "B:R2"] {
        let r = hexfa(&[
            "run",
            "--automaton",
            &all,
            "--direction",
            code,
            "--trace",
            &pic,
        ]);
        assert_eq!(r.code, 0);
        let lines: Vec<&str> = r.out.lines().collect();
        assert_eq!(lines.len(), 19 + 5 + 1);
        assert_eq!(*lines.last().unwrap(), "ACCEPT");
        assert!(lines[0].starts_with("1 f a {f} "));
        assert!(lines[lines.len() - 2].ends_with("_ _ _ / _ _ _ _ / _ _ _ _ _ / _ _ _ _ / _ _ _"));
    }
}

#[test]
fn run_verdicts_and_directions() {
    let f = Files::new();
    let parity = f.automaton("parity.hxa", &catalog::parity(B, &ab()));
    let odd = f.picture("odd.hxp", &picture(1, 1, 1, "a"));
    let even = f.picture("even.hxp", &picture(1, 1, 2, "a b"));
    let r = hexfa(&["run", "--automaton", &parity, &odd]);
    assert_eq!((r.code, r.out.as_str()), (1, "REJECT\n"));
    assert_eq!(hexfa(&["run", "--automaton", &parity, &even]).code, 0);

    let r = hexfa(&["run", "--automaton", &parity, "--direction", "R:R0", &even]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error: direction R:R0"));
    assert_eq!(
        hexfa(&["run", "--automaton", &parity, "--direction", "B:x9", &even]).code,
        2
    );
}

#[test]
fn automaton_direction_is_the_default() {
    let f = Files::new();
    let first = catalog::first_cell_is(B, &ab(), &ab()[1]);
    let p = picture(1, 1, 2, "a b");
    let pic = f.picture("p.hxp", &p);
    let plain = f.automaton("plain.hxa", &first);
    assert_eq!(hexfa(&["run", "--automaton", &plain, &pic]).code, 1);
    let mode = DirectionMode::all(B)
        .into_iter()
        .find(|&d| first.run(&p, d).unwrap())
        .unwrap();
    let directed = f.automaton("directed.hxa", &first.with_direction(Some(mode)));
    assert_eq!(hexfa(&["run", "--automaton", &directed, &pic]).code, 0);
}

#[test]
fn conversions_write_loadable_automata() {
    let f = Files::new();
    let spec = RandomSpec::new(B, 3, ab());
    let a = &random_pool(5, 1, &spec)[0];
    let src = f.automaton("a.hxa", a);

    let out = f.path("det.hxa");
    let r = hexfa(&[
        "determinize",
        "--automaton",
        &src,
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!((r.code, r.out.as_str()), (0, ""));
    assert!(parse_automaton(&text(&out)).unwrap().is_deterministic());

    let r = hexfa(&["to-rfa", "--automaton", &src, "-o", "-"]);
    assert_eq!(r.code, 0);
    let rfa = parse_automaton(&r.out).unwrap();
    assert_eq!(rfa.kind(), R);
    let rfa_path = f.put("rfa.hxa", &r.out);

    for target in ["r0", "r3", "R3"] {
        let r = hexfa(&[
            "mirror",
            "--target",
            target,
            "--automaton",
            &rfa_path,
            "-o",
            "-",
        ]);
        assert_eq!(r.code, 0, "{target}: {}", r.err);
        let m = parse_automaton(&r.out).unwrap();
        let canon = DirectionMode::canonical(R);
        let g: SymmetryOp = target.parse().unwrap();
        let v = bounded_equivalent(&rfa, canon, &m, canon, &ab(), &SizeBound::up_to(2), g).unwrap();
        assert!(v.is_equal(), "{target}");
    }
}

#[test]
fn mirror_needs_a_returning_automaton() {
    let f = Files::new();
    let src = f.automaton("a.hxa", &catalog::accept_all(B, &ab()));
    let r = hexfa(&["mirror", "--target", "r0", "--automaton", &src, "-o", "-"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.err.lines().count(), 1);
    let r = hexfa(&["mirror", "--target", "R1", "--automaton", &src, "-o", "-"]);
    assert_eq!(r.code, 2);
}

#[test]
fn enumeration() {
    let r = hexfa(&[
        "enum",
        "--alphabet",
        "a,b",
        "--max-side",
        "2",
        "--count-only",
    ]);
    assert_eq!((r.code, r.out.as_str()), (0, "190\n"));
    let r = hexfa(&["enum", "--alphabet", "a,b", "--max-side", "2"]);
    let pictures: Vec<HexPicture> = r
        .out
        .split("\n\n")
        .map(|chunk| parse_picture(chunk).unwrap())
        .collect();
    assert_eq!(pictures.len(), 190);
    let r = hexfa(&["enum", "--alphabet", "x", "--max-side", "1"]);
    assert_eq!(r.out, "%HXP 1\nsize: 1 1 1\nrow: x\n");
    assert_eq!(
        hexfa(&["enum", "--alphabet", "#", "--max-side", "1"]).code,
        2
    );
    assert_eq!(
        hexfa(&["enum", "--alphabet", "a", "--max-side", "0"]).code,
        2
    );
}

#[test]
fn equiv_agrees_with_the_library() {
    let f = Files::new();
    let canon = DirectionMode::canonical(B);
    let pool = random_pool(17, 8, &RandomSpec::new(B, 2, ab()));
    for (i, pair) in pool.chunks(2).enumerate() {
        let (x, y) = (&pair[0], &pair[1]);
        let px = f.automaton(&format!("x{i}.hxa"), x);
        let py = f.automaton(&format!("y{i}.hxa"), y);
        for g in ["R0", "r3"] {
            let op: SymmetryOp = g.parse().unwrap();
            let lib =
                bounded_equivalent(x, canon, y, canon, &ab(), &SizeBound::up_to(2), op).unwrap();
            let r = hexfa(&[
                "equiv",
                "--a1",
                &px,
                "--a2",
                &py,
                "--op",
                g,
                "--max-side",
                "2",
            ]);
            assert_eq!(r.code == 0, lib.is_equal());
        }
        let d = f.automaton(&format!("d{i}.hxa"), &x.determinize().unwrap());
        let r = hexfa(&["equiv", "--a1", &px, "--a2", &d, "--max-side", "2"]);
        assert_eq!((r.code, r.out.as_str()), (0, "EQUAL\n"));
    }
}

#[test]
fn group_queries() {
    let r = hexfa(&["group", "--table"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[7], "r0 r0 r5 r4 r3 r2 r1 R0 R5 R4 R3 R2 R1");
    assert_eq!(
        hexfa(&["group", "--normal-form", "r5"]).out,
        "r1 o R1 o R1\n"
    );
    assert_eq!(hexfa(&["group", "--compose", "r0", "r3"]).out, "R3\n");
    assert_eq!(hexfa(&["group"]).code, 2);
    assert_eq!(
        hexfa(&["group", "--table", "--compose", "R1", "R1"]).code,
        2
    );
}

#[test]
fn bad_input_exit_codes() {
    let f = Files::new();
    let broken = f.put("broken.hxp", "%HXP 1\nsize: 2 2 2\nrow: a a\n");
    let r = hexfa(&["render", &broken]);
    assert_eq!(r.code, 3);
    assert_eq!(r.err.lines().count(), 1);
    assert_eq!(hexfa(&["render", "/no/such/file"]).code, 3);
    let bad = f.put("bad.hxa", "%HXA 1\nkind: GHBFA\n");
    let pic = f.picture("p.hxp", &picture(1, 1, 1, "a"));
    assert_eq!(hexfa(&["run", "--automaton", &bad, &pic]).code, 3);
    let r = hexfa(&["render", "--frame", &pic]);
    assert_eq!(r.code, 2);
    assert_eq!(r.err.lines().count(), 1);
    assert_eq!(hexfa(&[]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let src = f.automaton("a.hxa", &random_pool(3, 1, &RandomSpec::new(B, 3, ab()))[0]);
    let first = hexfa(&["to-rfa", "--automaton", &src, "-o", "-"]).out;
    let again = hexfa(&["to-rfa", "--automaton", &src, "-o", "-"]).out;
    assert_eq!(first, again);
}
