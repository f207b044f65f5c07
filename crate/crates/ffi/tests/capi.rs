//! Exercises the C ABI exactly as a foreign caller would: through raw
//! pointers and status codes.

use std::ffi::{CStr, CString};

use goalrec_ffi::*;

fn build_two_goal_bank() -> *mut GrBank {
    // Goal "near": straight line along y = 0; goal "far": offset by 1.
    let builder = gr_bank_builder_new(0.1);
    let xs: Vec<f64> = (0..8).map(|i| i as f64).collect();
    let near_ys = [0.0; 8];
    let far_ys = [1.0; 8];
    let near = CString::new("near").unwrap();
    let far = CString::new("far").unwrap();
    unsafe {
        assert_eq!(
            gr_bank_builder_add_trajectory(builder, near.as_ptr(), xs.as_ptr(), near_ys.as_ptr(), 8),
            GrStatus::Ok
        );
        assert_eq!(
            gr_bank_builder_add_trajectory(builder, far.as_ptr(), xs.as_ptr(), far_ys.as_ptr(), 8),
            GrStatus::Ok
        );
        let mut bank: *mut GrBank = std::ptr::null_mut();
        assert_eq!(gr_bank_builder_finish(builder, &mut bank), GrStatus::Ok);
        assert!(!bank.is_null());
        bank
    }
}

#[test]
fn worked_posterior_through_the_c_abi() {
    let bank = build_two_goal_bank();
    unsafe {
        assert_eq!(gr_bank_goal_count(bank), 2);
        let label = gr_bank_goal_label(bank, 0);
        assert_eq!(CStr::from_ptr(label).to_str().unwrap(), "near");
        gr_string_free(label);

        let session = gr_session_new(bank);
        assert!(!session.is_null());
        // Observations on the "near" line: mean distances 0 and 1.
        let mut probs = [0.0f64; 2];
        let mut argmax = usize::MAX;
        for t in 0..4u64 {
            let status = gr_session_update(
                session,
                t,
                t as f64,
                0.0,
                probs.as_mut_ptr(),
                probs.len(),
                &mut argmax,
            );
            assert_eq!(status, GrStatus::Ok);
        }
        assert_eq!(gr_session_observation_count(session), 4);
        assert_eq!(argmax, 0);
        assert!((probs[0] - 0.6127).abs() < 1e-4, "{probs:?}");
        assert!((probs[1] - 0.3873).abs() < 1e-4, "{probs:?}");

        gr_session_free(session);
        gr_bank_free(bank);
    }
}

#[test]
fn sessions_outlive_a_freed_bank() {
    let bank = build_two_goal_bank();
    unsafe {
        let session = gr_session_new(bank);
        gr_bank_free(bank);
        let mut probs = [0.0f64; 2];
        let status = gr_session_update(
            session,
            0,
            0.0,
            0.0,
            probs.as_mut_ptr(),
            probs.len(),
            std::ptr::null_mut(),
        );
        assert_eq!(status, GrStatus::Ok);
        assert!((probs[0] + probs[1] - 1.0).abs() < 1e-9);
        gr_session_free(session);
    }
}

#[test]
fn error_codes_for_misuse() {
    unsafe {
        let mut probs = [0.0f64; 4];
        assert_eq!(
            gr_session_update(
                std::ptr::null_mut(),
                0,
                0.0,
                0.0,
                probs.as_mut_ptr(),
                probs.len(),
                std::ptr::null_mut()
            ),
            GrStatus::NullPointer
        );

        let bank = build_two_goal_bank();
        let session = gr_session_new(bank);

        // Too-small output buffer.
        assert_eq!(
            gr_session_update(session, 0, 0.0, 0.0, probs.as_mut_ptr(), 1, std::ptr::null_mut()),
            GrStatus::BufferTooSmall
        );
        // Buffer check happens before the fold, so t = 0 is still fresh.
        assert_eq!(
            gr_session_update(session, 0, 0.0, 0.0, probs.as_mut_ptr(), 2, std::ptr::null_mut()),
            GrStatus::Ok
        );
        // Non-increasing timestamp.
        assert_eq!(
            gr_session_update(session, 0, 0.1, 0.0, probs.as_mut_ptr(), 2, std::ptr::null_mut()),
            GrStatus::OutOfOrderObservation
        );

        gr_session_free(session);
        gr_bank_free(bank);
    }
}

#[test]
fn bank_json_loading_reports_parse_errors() {
    let bad = CString::new("{ not json").unwrap();
    let mut bank: *mut GrBank = std::ptr::null_mut();
    unsafe {
        assert_eq!(gr_bank_from_json(bad.as_ptr(), &mut bank), GrStatus::Parse);
        assert!(bank.is_null());
    }
}

#[test]
fn version_is_a_static_string() {
    let v = gr_version();
    let s = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
    assert!(!s.is_empty());
}
