use solid_cli::{run, Outcome};

fn solidring(args: &[&str]) -> Outcome {
    run(std::iter::once("solidring").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = solidring(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    assert!(out.stderr.is_empty());
    out.stdout
}

#[test]
fn core_lines() {
    assert_eq!(
        ok(&["core", "Z_5"]),
        "core: solid(q=0; e(default=0; 5=>inf))  ring=Z[P\\{5}^-1]\nchar: 0\nderivation: padic-tower-sup\n"
    );
    assert_eq!(
        ok(&["core", "Poly(Z/12)"]),
        "core: solid(q=1; e(default=0; 2=>2, 3=>1))  ring=Z/12\nchar: 12\nderivation: nonzero-char,polynomial\n"
    );
    assert_eq!(
        ok(&["core", "Field(0)"]),
        "core: solid(q=0; e(default=0))  ring=Q\nchar: 0\nderivation: char0-field\n"
    );
    assert!(ok(&["core", "Zhat"]).starts_with("core: solid(q=0; e(default=inf))  ring=Z\n"));
}

#[test]
fn json_output() {
    assert_eq!(
        ok(&["--format", "json", "hom", "Z/12", "Z/4"]),
        "{\"hom\":\"yes\"}\n"
    );
    assert_eq!(
        ok(&["iso", "solid(q=1; e(default=0; 2=>2))", "core:solid(q=1;e(default=0;2=>2))", "--format", "json"]),
        "{\"iso\":\"yes\"}\n"
    );
}

#[test]
fn hom_answers() {
    assert_eq!(ok(&["hom", "solid(q=0; e(default=inf; 2=>2))", "Z/12"]), "hom: yes\n");
    assert_eq!(ok(&["hom", "solid(q=0; e(default=inf; 2=>1))", "Z/12"]), "hom: no\n");
    assert_eq!(ok(&["hom", "Z/6", "Z/3"]), "hom: yes\n");
    assert_eq!(ok(&["hom", "Z/3", "Z/6"]), "hom: no\n");
    assert_eq!(ok(&["hom", "Z/3", "Z[1/3]"]), "hom: no\n");
    assert_eq!(ok(&["hom", "Z", "Zhat"]), "hom: yes\n");
    assert_eq!(ok(&["hom", "Z[1/2] x Z/8", "Z/24 x Q"]), "hom: yes\n");
}

#[test]
fn lattice_commands() {
    assert_eq!(
        ok(&["coprod", "solid(q=1; e(default=0; 2=>2, 3=>1))", "solid(q=1; e(default=0; 2=>3))"]),
        "coprod: solid(q=1; e(default=0; 2=>2))  ring=Z/4\n"
    );
    assert_eq!(
        ok(&["limit-core", "Z/4", "Z/6"]),
        "limit-core: solid(q=1; e(default=0; 2=>2, 3=>1))  ring=Z/12\n"
    );
    assert_eq!(ok(&["limit-core", "Z", "Z/2"]), "limit-core: solid(q=0; e(default=inf))  ring=Z\n");
    assert_eq!(
        ok(&["colimit-bound", "Z/12", "Z/8"]),
        "colimit-bound: solid(q=1; e(default=0; 2=>2))  ring=Z/4\nexact: yes\n"
    );
    assert_eq!(
        ok(&["colimit-bound", "Zhat", "Q"]),
        "colimit-bound: solid(q=0; e(default=0))  ring=Q\nexact: no\n"
    );
}

#[test]
fn printed_lines_are_accepted_back() {
    for expr in ["Z_7", "Zhat x Z/9", "Prod(p in {2,3}) Z/p^2", "Prod(p in P) Z/p^1", "Z[1/2] x Z/4", "Z/1"] {
        let out = ok(&["core", expr]);
        let line = out.lines().next().unwrap().strip_prefix("core: ").unwrap();
        assert_eq!(ok(&["iso", line, line]), "iso: yes\n", "{expr}");
        assert_eq!(ok(&["iso", out.lines().next().unwrap(), line]), "iso: yes\n", "{expr}");
    }
}

#[test]
fn element_commands() {
    let ring = "solid(q=0; e(default=1))";
    assert_eq!(ok(&["elem", "add", "--ring", ring, "(1/2; 2=0)", "(1/2; 2=1)"]), "elem: (1)\n");
    assert_eq!(ok(&["elem", "mul", "--ring", ring, "(1/2; 2=0)", "(1/2; 2=1)"]), "elem: (1/4; 2=0)\n");
    assert_eq!(ok(&["elem", "neg", "--ring", ring, "(0; 3=1)"]), "elem: (0; 3=2)\n");
    assert_eq!(ok(&["elem", "eq", "--ring", ring, "(2/2)", "(1)"]), "eq: yes\n");
    assert_eq!(ok(&["elem", "eq", "--ring", ring, "(0; 2=1)", "(0)"]), "eq: no\n");
}

#[test]
fn membership() {
    let ambient = "Q x Prod(p in P) Z/p^1";
    assert_eq!(ok(&["member", ambient, "(0; 2=1; tail=follow)"]), "member: yes\n");
    assert_eq!(ok(&["member", ambient, "(0; tail=const:1)"]), "member: no\n");
    assert_eq!(ok(&["member", ambient, "(5; tail=const:5)"]), "member: yes\n");
}

#[test]
fn oracle_commands() {
    assert_eq!(ok(&["oracle", "find-r", "12", "2", "2"]), "witness: r=8 mod 12\nunique: yes\nhom-check: pass\n");
    assert_eq!(ok(&["oracle", "find-r", "12", "2", "1"]), "witness: none\n");
    assert_eq!(
        ok(&["oracle", "finite-core", "4,6"]),
        "core-size: 12\nlcm: 12\nagree: yes\nimage-of-z: yes\n"
    );
    assert_eq!(ok(&["oracle", "hom-count", "6", "3"]), "hom-count: 1\n");
    assert_eq!(ok(&["oracle", "hom-count", "3", "6"]), "hom-count: 0\n");
    assert_eq!(
        ok(&["oracle", "coprod-check", "solid(q=1; e(default=0; 2=>2, 3=>1))", "solid(q=1; e(default=0; 2=>3))"]),
        "by-exponents: solid(q=1; e(default=0; 2=>2))  ring=Z/4\n\
         by-tensor: solid(q=1; e(default=0; 2=>2))  ring=Z/4\n\
         agree: yes\n"
    );
}

#[test]
fn exit_codes() {
    let parse = solidring(&["core", "Z_4"]);
    assert_eq!(parse.code, 2);
    assert!(parse.stderr.contains("at position 2"), "{}", parse.stderr);
    assert!(parse.stdout.is_empty());

    let bad_prod = solidring(&["core", "Prod(p in P) Z/p^e(default=inf)"]);
    assert_eq!(bad_prod.code, 2);
    assert!(bad_prod.stderr.contains("infinite exponent"));

    let invalid = solidring(&["iso", "solid(q=1; e(default=0; 2=>inf))", "Z"]);
    assert_eq!(invalid.code, 1, "{}", invalid.stderr);

    let not_solid = solidring(&["hom", "Zhat", "Z"]);
    assert_eq!(not_solid.code, 1);

    let char_n = solidring(&["elem", "add", "--ring", "solid(q=1; e(default=0; 2=>1))", "(0)", "(1)"]);
    assert_eq!(char_n.code, 1);

    let guard = solidring(&["oracle", "finite-core", "1000,1001"]);
    assert_eq!(guard.code, 1);
    assert!(guard.stderr.contains("exceeds the guard"));

    assert_eq!(solidring(&["oracle", "find-r", "12", "4", "2"]).code, 2);
    assert_eq!(solidring(&["frobnicate"]).code, 2);
    assert_eq!(solidring(&["core", "Z", "--verbose"]).code, 2);
    assert_eq!(solidring(&["elem", "neg", "--ring", "solid(q=0; e(default=1))", "(1)", "(2)"]).code, 2);
    assert_eq!(solidring(&["--help"]).code, 0);
}

#[test]
fn output_is_stable() {
    let args = ["core", "Z/6 x Zhat x Prod(p in P\\{2}) Z/p^1"];
    assert_eq!(ok(&args), ok(&args));
}
