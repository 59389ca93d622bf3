use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rota_baxter_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rb_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

/// Takes ownership of a returned string.
fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { rb_string_free(s) };
    out
}

fn parse(text: &str, dim: u32, cap: u32) -> *mut RbSeries {
    let mut out = ptr::null_mut();
    let status = unsafe { rb_series_parse(c(text).as_ptr(), dim, cap, &mut out) };
    assert_eq!(status, RbStatus::Ok, "{}", last_error());
    out
}

fn text(s: *const RbSeries) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rb_series_to_text(s, &mut out) }, RbStatus::Ok);
    take(out)
}

fn operator(kind: &str, q: Option<&str>) -> *mut RbOperator {
    let q = q.map(c);
    let mut out = ptr::null_mut();
    let status = unsafe {
        rb_operator_new(
            c(kind).as_ptr(),
            q.as_ref().map_or(ptr::null(), |q| q.as_ptr()),
            &mut out,
        )
    };
    assert_eq!(status, RbStatus::Ok, "{}", last_error());
    out
}

#[test]
fn solve_spot_values() {
    let t = parse("0,1", 1, 4);
    let j = operator("antider", None);
    let mut b = ptr::null_mut();
    let status = unsafe { rb_solve(c("inhom-left").as_ptr(), j, t, t, RbMethod::Closed, &mut b) };
    assert_eq!(status, RbStatus::Ok, "{}", last_error());
    assert_eq!(text(b), "0,0,1/2,0,1/8");
    assert_eq!(unsafe { rb_series_cap(b) }, 4);

    let t2 = parse("0,1", 1, 2);
    let qint = operator("qint", Some("1/2"));
    let mut b2 = ptr::null_mut();
    assert_eq!(
        unsafe {
            rb_solve(
                c("inhom-left").as_ptr(),
                qint,
                t2,
                t2,
                RbMethod::Picard,
                &mut b2,
            )
        },
        RbStatus::Ok
    );
    assert_eq!(text(b2), "0,1,2/3");
    unsafe {
        rb_series_free(b);
        rb_series_free(b2);
        rb_series_free(t);
        rb_series_free(t2);
        rb_operator_free(j);
        rb_operator_free(qint);
    }
}

#[test]
fn operator_application_and_json() {
    let x = parse("0,1,1", 1, 2);
    let op = operator("qint", Some("1/2"));
    let (mut px, mut tx) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(rb_operator_apply(op, x, &mut px), RbStatus::Ok);
        assert_eq!(rb_operator_apply_tilde(op, x, &mut tx), RbStatus::Ok);
    }
    // q/(1−q) = 1 and q²/(1−q²) = 1/3; P̃ = −x − P(x)
    assert_eq!(text(px), "0,1,1/3");
    assert_eq!(text(tx), "0,-2,-4/3");
    let mut sum = ptr::null_mut();
    assert_eq!(unsafe { rb_series_add(px, tx, &mut sum) }, RbStatus::Ok);
    assert_eq!(text(sum), "0,-1,-1");

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { rb_series_to_json(px, &mut json) }, RbStatus::Ok);
    let json = take(json);
    assert_eq!(json, r#"["0","1","1/3"]"#);
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { rb_series_parse_json(c(&json).as_ptr(), 1, 2, &mut back) },
        RbStatus::Ok
    );
    assert_eq!(text(back), "0,1,1/3");
    unsafe {
        for s in [x, px, tx, sum, back] {
            rb_series_free(s);
        }
        rb_operator_free(op);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { rb_series_parse(c("0,x").as_ptr(), 1, 3, &mut s) },
        RbStatus::Parse
    );
    assert!(last_error().contains("x"));
    assert!(s.is_null());
    assert_eq!(
        unsafe { rb_series_parse(ptr::null(), 1, 3, &mut s) },
        RbStatus::NullPointer
    );
    assert_eq!(
        unsafe { rb_series_parse(c("0,1").as_ptr(), 0, 3, &mut s) },
        RbStatus::Config
    );

    let mut op = ptr::null_mut();
    assert_eq!(
        unsafe { rb_operator_new(c("qint").as_ptr(), c("1").as_ptr(), &mut op) },
        RbStatus::Config
    );
    assert_eq!(
        unsafe { rb_operator_new(c("qint").as_ptr(), ptr::null(), &mut op) },
        RbStatus::NullPointer
    );
    assert_eq!(
        unsafe { rb_operator_new(c("nope").as_ptr(), ptr::null(), &mut op) },
        RbStatus::Parse
    );

    let one = parse("1,1", 1, 1);
    let qint = operator("qint", Some("1/2"));
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { rb_operator_apply(qint, one, &mut out) },
        RbStatus::Domain
    );

    let a = parse("0,1", 1, 2);
    let b = parse("0,1", 1, 3);
    assert_eq!(
        unsafe { rb_series_mul(a, b, &mut out) },
        RbStatus::CapMismatch
    );
    let m = parse("0,[[1,0],[0,1]]", 2, 2);
    assert_eq!(
        unsafe { rb_series_mul(a, m, &mut out) },
        RbStatus::RingMismatch
    );
    assert!(out.is_null());

    // a successful call clears the message
    unsafe { rb_series_free(parse("0", 1, 0)) };
    assert_eq!(last_error(), "");
    unsafe {
        for s in [one, a, b, m] {
            rb_series_free(s);
        }
        rb_operator_free(qint);
        rb_series_free(ptr::null_mut());
        rb_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_reports_json() {
    let mut report = ptr::null_mut();
    let status = unsafe {
        rb_verify(
            c("eulerian-prop-one-printed").as_ptr(),
            c(r#"{"q": "1/2", "order": "1"}"#).as_ptr(),
            &mut report,
        )
    };
    assert_eq!(status, RbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(
        v["first_mismatch"],
        serde_json::json!({"power": 1, "lhs": "1", "rhs": "0"})
    );

    assert_eq!(
        unsafe { rb_verify(c("unknown").as_ptr(), ptr::null(), &mut report) },
        RbStatus::Usage
    );
    assert_eq!(
        unsafe { rb_verify(c("spitzer").as_ptr(), c("{not json").as_ptr(), &mut report) },
        RbStatus::Parse
    );
}

#[test]
fn default_suite_through_the_abi() {
    let mut reports = ptr::null_mut();
    let mut ok = false;
    assert_eq!(
        unsafe { rb_run_default_suite(&mut reports, &mut ok) },
        RbStatus::Ok
    );
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&take(reports)).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
}

/// Compiles `tests/smoke.c` against the generated header and the static
/// library, then runs it. Skipped when no C compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("librota_baxter_ffi.a");
    assert!(
        lib.exists(),
        "static library not built at {}",
        lib.display()
    );
    let exe = profile_dir.join(format!("rb-smoke-{}", std::process::id()));
    let status = Command::new(cc)
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0,0,1/2,0,1/8");
}
