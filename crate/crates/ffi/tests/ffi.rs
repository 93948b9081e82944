use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use mlmkit_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mlm_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = mlm_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

fn parse(text: &str) -> Result<*mut MlmPoly, MlmStatus> {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    match unsafe { mlm_poly_parse(c.as_ptr(), &mut p) } {
        MlmStatus::Ok => Ok(p),
        s => Err(s),
    }
}

#[test]
fn evaluate_and_query_a_clause_list() {
    let p = parse("vars 2\n(x1+x2)*(x1+x2)").unwrap();
    assert_eq!(unsafe { mlm_poly_num_vars(p) }, 2);
    assert!(!unsafe { mlm_poly_is_circuit(p) });

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { mlm_poly_evaluate(p, 0, 0, &mut t) }, MlmStatus::Ok);
    assert_eq!(unsafe { mlm_table_len(t) }, 1);

    let mono = CString::new("x1*x2").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mlm_table_coefficient(t, mono.as_ptr(), &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "2");
    assert_eq!(unsafe { mlm_table_sum(t, &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "2");
    assert_eq!(unsafe { mlm_table_format(t, &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "x1,x2 2\n");
    assert_eq!(unsafe { mlm_poly_format(p, &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "vars 2\n(x1 + x2) * (x1 + x2)\n");
    assert!(last_error().is_none());

    unsafe {
        mlm_table_free(t);
        mlm_poly_free(p);
    }
}

#[test]
fn circuits_evaluate_too() {
    let p = parse("a var x1\nb var x2\ns add a b\nm mul s s\nout m").unwrap();
    assert!(unsafe { mlm_poly_is_circuit(p) });
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { mlm_poly_evaluate(p, 0, 0, &mut t) }, MlmStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mlm_table_format(t, &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "x1,x2 2\n");

    let (mut len, mut vars) = (0usize, ptr::null_mut());
    assert_eq!(unsafe { mlm_poly_max_mlm(p, false, &mut len, &mut vars) }, MlmStatus::Shape);
    unsafe {
        mlm_table_free(t);
        mlm_poly_free(p);
    }
}

#[test]
fn max_mlm_greedy_and_exact() {
    let p = parse("(x1*x2+x3)*(x3*x4+x1)").unwrap();
    for exact in [false, true] {
        let (mut len, mut vars) = (0usize, ptr::null_mut());
        assert_eq!(unsafe { mlm_poly_max_mlm(p, exact, &mut len, &mut vars) }, MlmStatus::Ok);
        assert_eq!(len, 4);
        assert_eq!(take_string(vars), "x1,x2,x3,x4");
    }
    unsafe { mlm_poly_free(p) };
}

#[test]
fn error_codes_and_messages() {
    assert_eq!(parse("(x1 + )").unwrap_err(), MlmStatus::Syntax);
    assert!(last_error().unwrap().contains("line 1"));
    assert_eq!(parse("(x0)").unwrap_err(), MlmStatus::Validation);
    assert_eq!(parse("a var x1\nm mul a a a\nout m").unwrap_err(), MlmStatus::Validation);

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mlm_poly_parse(ptr::null(), &mut p) }, MlmStatus::NullArgument);
    let text = CString::new("(x1)").unwrap();
    assert_eq!(unsafe { mlm_poly_parse(text.as_ptr(), ptr::null_mut()) }, MlmStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { mlm_poly_parse(bad.as_ptr().cast(), &mut p) },
        MlmStatus::InvalidUtf8
    );

    // six clauses over twelve variables, capped at four table entries
    let p = parse("(x1+x2)*(x3+x4)*(x5+x6)*(x7+x8)*(x9+x10)*(x11+x12)").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { mlm_poly_evaluate(p, 4, 0, &mut t) }, MlmStatus::Resource);
    assert!(t.is_null());
    assert_eq!(unsafe { mlm_poly_evaluate(p, 0, 0, &mut t) }, MlmStatus::Ok);
    assert_eq!(unsafe { mlm_table_len(t) }, 64);
    unsafe {
        mlm_table_free(t);
        mlm_poly_free(p);
    }

    assert_eq!(unsafe { mlm_poly_num_vars(ptr::null()) }, 0);
    assert_eq!(unsafe { mlm_table_len(ptr::null()) }, 0);
    unsafe {
        mlm_poly_free(ptr::null_mut());
        mlm_table_free(ptr::null_mut());
        mlm_string_free(ptr::null_mut());
    }
}

#[test]
fn permanents_and_matchings() {
    let csv = CString::new("1,1,1\n1,1,1\n1,1,1\n").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mlm_permanent(csv.as_ptr(), &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "6");
    let ragged = CString::new("1,2\n3\n").unwrap();
    assert_eq!(unsafe { mlm_permanent(ragged.as_ptr(), &mut s) }, MlmStatus::Shape);

    let g = CString::new("bigraph 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n").unwrap();
    assert_eq!(unsafe { mlm_count_perfect_matchings(g.as_ptr(), &mut s) }, MlmStatus::Ok);
    assert_eq!(take_string(s), "2");
}

#[test]
fn generated_header_compiles_as_c_and_cpp() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let dir = std::env::temp_dir().join(format!("mlmkit-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = "#include \"mlmkit.h\"\nint main(void) { MlmPoly *p = 0; \
               MlmStatus s = mlm_poly_parse(\"(x1)\", &p); mlm_poly_free(p); return (int)s; }\n";
    for (lang, file) in [("c", "check.c"), ("c++", "check.cpp")] {
        let path = dir.join(file);
        std::fs::write(&path, src).unwrap();
        let status = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I", include])
            .arg(&path)
            .status()
            .expect("a C compiler named `cc` is on PATH");
        assert!(status.success(), "header does not compile as {lang}");
    }
    std::fs::remove_dir_all(&dir).ok();
}
