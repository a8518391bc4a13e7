use super::*;

#[test]
fn undeclared_variable_is_named() {
    let err = parse_job("vars: x y;\nideal: y - w;\n").unwrap_err();
    assert!(err.to_string().contains("`w`"), "{err}");
    assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
}

#[test]
fn non_coprime_slope() {
    let err = parse_job("vars: x;\nideal: x;\nslopes: 2/4;\n").unwrap_err();
    assert!(err.to_string().contains("not coprime"), "{err}");
}

#[test]
fn bad_order() {
    let err = parse_job("vars: x y;\norder: lex x < z;\nideal: x;\n").unwrap_err();
    assert!(matches!(err, Error::Parse { .. }), "{err}");
}

#[test]
fn rank_needs_peripheral() {
    let job = parse_job("vars: x y;\ndefined-over: Q;\nideal: y - 1;\n").unwrap();
    let err = cmd_rank(&job, &[SlopeSpec::meridian()], &[Scalars::Complex], false).unwrap_err();
    assert_eq!(err, Error::MissingSection("peripheral".into()));
}

#[test]
fn rational_rank_needs_field_declaration() {
    let job = parse_job("vars: x y;\nideal: y - 1;\nperipheral: mu = x;\n").unwrap();
    let err = cmd_rank(&job, &[SlopeSpec::meridian()], &[Scalars::Rational], false).unwrap_err();
    assert!(matches!(err, Error::MissingSection(_)));
    assert!(cmd_rank(&job, &[SlopeSpec::meridian()], &[Scalars::Complex], false).is_ok());
}

#[test]
fn corpus_round_trip() {
    for name in corpus::NAMES {
        let job = corpus::load(name).unwrap().unwrap();
        let text = job.to_text();
        let again = parse_job(&text).unwrap().to_text();
        assert_eq!(text, again, "{name}");
    }
}

#[test]
fn eight_twenty_has_five_generators() {
    let job = corpus::load("k8_20-X0").unwrap().unwrap();
    assert_eq!(job.ideal.generators().len(), 5);
    assert!(job.to_text().contains("order: lex y < x < z;"));
}

#[test]
fn figure_eight_longitude_from_words() {
    let job = corpus::load("fig8-X0").unwrap().unwrap();
    let l = job.peripheral_traces().lambda.unwrap();
    let gb = buchberger(&job.ideal);
    let expected = Poly::parse(&job.ring, "x^4 - 5*x^2 + 2").unwrap();
    assert!(gb.contains(&l.try_sub(&expected).unwrap()).unwrap(), "{l}");
}
