use dgcat_core::corpus;
use dgcat_core::hochschild::hh_dims;
use dgcat_core::io::{emit_category, parse_category, parse_document, parse_document_over, Document};
use dgcat_core::{Error, FieldSpec, Finiteness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn position(text: &str) -> (usize, usize, String) {
    match parse_category(text) {
        Err(Error::Parse { line, column, message }) => (line, column, message),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn random_categories_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let f3 = FieldSpec::prime(3).unwrap();
    for i in 0..40 {
        let field = if i % 2 == 0 { Q } else { f3 };
        let a = corpus::random_category(&mut rng, field, 4);
        for c in [a.clone(), a.opposite(), a.tensor(&corpus::path_a2(field)).unwrap()] {
            let text = emit_category(&c);
            let back = parse_category(&text).unwrap();
            assert_eq!(back, c, "{text}");
            assert_eq!(emit_category(&back), text);
        }
    }
}

#[test]
fn dg_quiver_files_realize() {
    // h survives in degree -1 while d(t) = s cancels the pair t, s
    let text = r#"
field = "q"
vertices = ["x", "y"]
wordlength_bound = 2
arrows = [
  { label = "h", source = "x", target = "y", degree = -1 },
  { label = "s", source = "x", target = "y", degree = 0, differential = "0" },
  { label = "t", source = "x", target = "y", degree = -1, differential = "s" },
]
"#;
    let c = parse_category(text).unwrap();
    assert!(c.validate().is_valid());
    let h = c.hom_complex(0, 1).homology_dims_truncated(-2..=1);
    assert_eq!(h[&-1], 1);
    assert_eq!(h[&0], 0);
    match parse_document(text).unwrap() {
        Document::Quiver(q) => {
            assert_eq!(q.wordlength_bound, 2);
            assert_eq!(q.presentation.generators().len(), 3);
        }
        Document::Category(_) => panic!("quiver layout expected"),
    }
}

#[test]
fn field_override_recomputes_over_prime_fields() {
    let text = emit_category(&corpus::dual_numbers(Q));
    let f2 = FieldSpec::prime(2).unwrap();
    let c = parse_document_over(&text, Some(f2)).unwrap().into_category().unwrap();
    assert_eq!(c.field(), f2);
    assert_eq!(hh_dims(&c, 2).unwrap().dims(), vec![2, 2, 2]);
    let halves = text.replace("scalar = 1 }", "scalar = \"1/2\" }");
    assert!(parse_document_over(&halves, Some(f2)).is_err());
}

#[test]
fn truncation_is_recorded() {
    let text = "field = \"q\"\nvertices = [\"x\"]\nwordlength_bound = 2\narrows = [{ label = \"t\", source = \"x\", target = \"x\" }]\n";
    let c = parse_category(text).unwrap();
    assert_eq!(c.finiteness(), Finiteness::Truncated);
    let emitted = emit_category(&c);
    assert!(emitted.starts_with("# warning"));
    assert_eq!(parse_category(&emitted).unwrap().finiteness(), Finiteness::Truncated);
}

#[test]
fn errors_point_at_the_offending_entry() {
    let base = "field = \"q\"\nobjects = [\"x\"]\nbasis = [\n  { source = \"x\", target = \"x\", label = \"i\", degree = 0 },\n]\n";
    let units = "[units]\nx = \"i\"\n";

    let (line, column, msg) = position(&format!(
        "{base}composition = [\n  {{ g = \"i\", f = \"j\", h = \"i\", scalar = 1 }},\n]\n{units}"
    ));
    assert_eq!((line, column), (7, 3));
    assert!(msg.contains("unknown basis label `j`"), "{msg}");

    let (line, _, msg) = position(&format!(
        "{base}composition = [\n  {{ g = \"i\", f = \"i\", h = \"i\", scalar = \"1/0\" }},\n]\n{units}"
    ));
    assert_eq!(line, 7);
    assert!(msg.contains("1/0"), "{msg}");

    let (line, _, msg) = position(&format!("{base}colour = 3\n{units}"));
    assert_eq!(line, 6);
    assert!(msg.contains("colour"), "{msg}");

    let (_, _, msg) = position(&format!("{base}[units]\n"));
    assert!(msg.contains("no unit"), "{msg}");

    let (line, _, msg) = position("field = \"q\"\nvertices = [\"x\"]\nwordlength_bound = 2\nrelations = [\"y*y\"]\n");
    assert_eq!(line, 4);
    assert!(msg.contains("unknown generator"), "{msg}");

    let (line, column, _) = position("field = \"q\"\nobjects = [\"x\",\n\"y\"\nbasis = []\n");
    assert!(line >= 3 && column >= 1);

    let (_, _, msg) = position("field = \"q\"\n");
    assert!(msg.contains("objects"), "{msg}");
}
