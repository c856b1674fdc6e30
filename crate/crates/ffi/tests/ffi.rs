use std::ffi::{CStr, CString};
use std::ptr;

use weylcluster_ffi::*;

const WEYL1: &str = "generators = [\"e\"]\n[[direction]]\nbinomial = \"e\"\nautomorphism = \"shift e 1\"\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    wc_string_free(s);
    out
}

fn weyl1() -> *mut WcPreseed {
    let mut p = ptr::null_mut();
    let st = unsafe { wc_preseed_from_spec(c(WEYL1).as_ptr(), &mut p) };
    assert_eq!(st, WcStatus::Ok);
    p
}

#[test]
fn mutate_and_render() {
    unsafe {
        let p = weyl1();
        let mut rank = 0;
        assert_eq!(wc_preseed_rank(p, &mut rank), WcStatus::Ok);
        assert_eq!(rank, 1);
        let mut q = ptr::null_mut();
        assert_eq!(wc_preseed_mutate(p, c("1R 1R").as_ptr(), &mut q), WcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(wc_preseed_cluster(q, &mut s), WcStatus::Ok);
        assert_eq!(take(s), "xi*x*xi^-1");
        assert_eq!(wc_eval_position(p, 1, -1, &mut s), WcStatus::Ok);
        assert_eq!(take(s), "(e - 1)*t^-1");
        wc_preseed_free(q);
        wc_preseed_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        let st = wc_preseed_from_spec(c("generators = 3").as_ptr(), &mut p);
        assert_eq!(st, WcStatus::Parse);
        assert!(p.is_null());
        assert!(!wc_last_error().is_null());
        assert_eq!(wc_preseed_from_spec(ptr::null(), &mut p), WcStatus::NullPointer);

        let p = weyl1();
        let mut q = ptr::null_mut();
        assert_eq!(
            wc_preseed_mutate(p, c("2R").as_ptr(), &mut q),
            WcStatus::IndexOutOfRange
        );
        let msg = CStr::from_ptr(wc_last_error()).to_str().unwrap();
        assert!(msg.contains("out of range"), "{msg}");
        let mut s = ptr::null_mut();
        assert_eq!(wc_eval_position(p, 3, 0, &mut s), WcStatus::IndexOutOfRange);
        let mut passed = 0;
        assert_eq!(wc_verify(p, c("nosuch").as_ptr(), 3, &mut passed), WcStatus::Parse);
        assert_eq!(wc_preseed_rank(ptr::null(), &mut 0), WcStatus::NullPointer);
        wc_preseed_free(p);
        wc_preseed_free(ptr::null_mut());
    }
}

#[test]
fn suites_and_zigzag() {
    unsafe {
        let p = weyl1();
        let mut passed = 0;
        assert_eq!(wc_verify(p, c("gwa").as_ptr(), 3, &mut passed), WcStatus::Ok);
        assert_eq!(passed, 1);
        assert_eq!(wc_verify(p, c("weylline").as_ptr(), 5, &mut passed), WcStatus::Ok);
        assert_eq!(passed, 1);
        assert_eq!(wc_verify(p, c("closedform").as_ptr(), 3, &mut passed), WcStatus::Ok);
        assert_eq!(passed, 0);
        wc_preseed_free(p);

        let mut z = ptr::null_mut();
        assert_eq!(wc_zigzag_new(c("xi^-1 * eta").as_ptr(), 0, 4, 1, &mut z), WcStatus::Ok);
        let (mut len, mut h) = (0, 0);
        assert_eq!(wc_zigzag_shape(z, &mut len, &mut h), WcStatus::Ok);
        assert_eq!((len, h), (2, 1));
        wc_zigzag_free(z);
        assert_eq!(wc_zigzag_new(c("xi^").as_ptr(), 0, 4, 0, &mut z), WcStatus::Parse);
    }
}

#[test]
fn header_lists_every_export() {
    let header = include_str!("../include/weylcluster.h");
    for f in [
        "wc_preseed_from_spec",
        "wc_preseed_free",
        "wc_preseed_rank",
        "wc_preseed_mutate",
        "wc_preseed_cluster",
        "wc_eval_position",
        "wc_verify",
        "wc_zigzag_new",
        "wc_zigzag_shape",
        "wc_zigzag_free",
        "wc_last_error",
        "wc_string_free",
        "typedef struct WcPreseed WcPreseed",
        "WC_STATUS_INDEX_OUT_OF_RANGE = 4",
    ] {
        assert!(header.contains(f), "missing {f}");
    }
}
