use std::ffi::{CStr, CString};
use std::ptr;

use chimera_clique_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cc_last_error_message()).to_string_lossy().into_owned() }
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s).to_str().unwrap().to_owned() };
    unsafe { cc_string_free(s) };
    text
}

#[test]
fn defect_free_clique() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_graph_new(8, 8, 4, &mut g), CcStatus::Ok);
        let mut live = 0;
        assert_eq!(cc_graph_live_qubit_count(g, &mut live), CcStatus::Ok);
        assert_eq!(live, 512);

        let mut e = ptr::null_mut();
        assert_eq!(cc_embed(g, 0, &mut e), CcStatus::Ok);
        let (mut size, mut n) = (0, 0);
        assert_eq!(cc_embedding_clique_size(e, &mut size), CcStatus::Ok);
        assert_eq!(cc_embedding_n(e, &mut n), CcStatus::Ok);
        assert_eq!((size, n), (32, 8));

        let mut buf = [CcCoord { x: 0, y: 0, u: 0, k: 0 }; 9];
        let mut len = 0;
        assert_eq!(cc_embedding_chain(e, 0, buf.as_mut_ptr(), buf.len(), &mut len), CcStatus::Ok);
        assert_eq!(len, 9);
        assert_eq!(buf.iter().filter(|q| q.u == 0).count() + buf.iter().filter(|q| q.u == 1).count(), 9);

        let mut violations = usize::MAX;
        assert_eq!(cc_validate(g, e, &mut violations, ptr::null_mut()), CcStatus::Ok);
        assert_eq!(violations, 0);

        cc_embedding_free(e);
        cc_graph_free(g);
    }
}

#[test]
fn defects_and_json_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_graph_new(3, 3, 2, &mut g), CcStatus::Ok);
        assert_eq!(cc_graph_kill_qubit(g, 2, 2, 0, 1), CcStatus::Ok);
        let a = CcCoord { x: 1, y: 1, u: 0, k: 1 };
        let b = CcCoord { x: 2, y: 1, u: 0, k: 1 };
        assert_eq!(cc_graph_kill_coupler(g, a, b), CcStatus::Ok);

        let mut json = ptr::null_mut();
        assert_eq!(cc_graph_to_json(g, &mut json), CcStatus::Ok);
        let text = take_string(json);
        assert!(text.contains("\"dead_couplers\""));

        let c = CString::new(text).unwrap();
        let mut g2 = ptr::null_mut();
        assert_eq!(cc_graph_from_json(c.as_ptr(), &mut g2), CcStatus::Ok);
        let mut live = 0;
        cc_graph_live_qubit_count(g2, &mut live);
        assert_eq!(live, 35);

        let mut e = ptr::null_mut();
        assert_eq!(cc_embed(g2, 3, &mut e), CcStatus::Ok);
        let mut ej = ptr::null_mut();
        assert_eq!(cc_embedding_to_json(e, &mut ej), CcStatus::Ok);
        let ejc = CString::new(take_string(ej)).unwrap();
        let mut e2 = ptr::null_mut();
        assert_eq!(cc_embedding_from_json(ejc.as_ptr(), &mut e2), CcStatus::Ok);
        let mut report = ptr::null_mut();
        let mut violations = usize::MAX;
        assert_eq!(cc_validate(g2, e2, &mut violations, &mut report), CcStatus::Ok);
        assert_eq!(violations, 0);
        assert!(take_string(report).contains("\"valid\":true"));

        cc_embedding_free(e);
        cc_embedding_free(e2);
        cc_graph_free(g);
        cc_graph_free(g2);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_graph_new(0, 2, 2, &mut g), CcStatus::InvalidArgument);
        assert!(last_error().contains("invalid shape"));
        assert_eq!(cc_graph_new(2, 2, 2, ptr::null_mut()), CcStatus::NullPointer);

        assert_eq!(cc_graph_new(2, 2, 2, &mut g), CcStatus::Ok);
        assert_eq!(cc_graph_kill_qubit(g, 3, 1, 0, 1), CcStatus::OutOfRange);
        assert_eq!(cc_graph_kill_qubit(g, 1, 1, 2, 1), CcStatus::InvalidArgument);
        let a = CcCoord { x: 1, y: 1, u: 0, k: 1 };
        assert_eq!(cc_graph_kill_coupler(g, a, CcCoord { x: 1, y: 2, u: 0, k: 1 }), CcStatus::InvalidArgument);
        let mut e = ptr::null_mut();
        assert_eq!(cc_embed(g, 3, &mut e), CcStatus::OutOfRange);
        assert_eq!(cc_embed(ptr::null(), 2, &mut e), CcStatus::NullPointer);

        assert_eq!(cc_graph_kill_coupler(g, a, CcCoord { x: 1, y: 1, u: 1, k: 2 }), CcStatus::Ok);
        assert_eq!(cc_embed(g, 2, &mut e), CcStatus::NonInduced);

        let bad = CString::new("{not json").unwrap();
        let mut g2 = ptr::null_mut();
        assert_eq!(cc_graph_from_json(bad.as_ptr(), &mut g2), CcStatus::Parse);
        cc_graph_free(g);

        assert_eq!(cc_triangle(4, 4, &mut e), CcStatus::Ok);
        let mut len = 0;
        assert_eq!(cc_embedding_chain(e, 0, ptr::null_mut(), 0, &mut len), CcStatus::BufferTooSmall);
        assert_eq!(len, 5);
        assert_eq!(cc_embedding_chain(e, 16, ptr::null_mut(), 0, &mut len), CcStatus::OutOfRange);
        cc_embedding_free(e);

        cc_graph_free(ptr::null_mut());
        cc_embedding_free(ptr::null_mut());
        cc_string_free(ptr::null_mut());
    }
}
