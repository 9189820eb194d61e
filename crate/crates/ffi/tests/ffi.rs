use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lgi_ffi::*;

const PI: f64 = std::f64::consts::PI;

fn new_config(theta: f64) -> *mut LgiConfig {
    let mut cfg = ptr::null_mut();
    assert_eq!(unsafe { lgi_config_new(theta, &mut cfg) }, LgiStatus::Ok);
    assert!(!cfg.is_null());
    cfg
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lgi_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn engines_at_pi_over_six() {
    let cfg = new_config(PI / 6.0);
    let mut c = LgiCorrelators::default();
    unsafe {
        assert_eq!(lgi_k_statistic(cfg, LGI_ENGINE_SEPARATE, &mut c), LgiStatus::Ok);
        assert!((c.k - 1.5).abs() < 1e-12);
        assert_eq!(lgi_k_statistic(cfg, LGI_ENGINE_INRM, &mut c), LgiStatus::Ok);
        assert!((c.k - 1.5).abs() < 1e-12);
        assert_eq!(lgi_k_statistic(cfg, LGI_ENGINE_SIMULTANEOUS, &mut c), LgiStatus::Ok);
        assert!((c.k - 0.75).abs() < 1e-12);
        assert!((c.c13 - 0.25).abs() < 1e-12);
        lgi_config_free(cfg);
    }
}

#[test]
fn single_correlators() {
    let cfg = new_config(0.3);
    let mut v = 0.0;
    unsafe {
        assert_eq!(lgi_correlator(cfg, LGI_ENGINE_SEPARATE, 1, 3, &mut v), LgiStatus::Ok);
        assert!((v - (4.0f64 * 0.3).cos()).abs() < 1e-12);
        assert_eq!(lgi_correlator(cfg, LGI_ENGINE_SIMULTANEOUS, 1, 3, &mut v), LgiStatus::Ok);
        assert!((v - (0.6f64).cos().powi(2)).abs() < 1e-12);
        assert_eq!(
            lgi_correlator(cfg, LGI_ENGINE_SEPARATE, 2, 2, &mut v),
            LgiStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());
        lgi_config_free(cfg);
    }
}

#[test]
fn state_and_observable_setters() {
    let cfg = new_config(PI / 6.0);
    let mut c = LgiCorrelators::default();
    unsafe {
        // |0><0| as initial state: separate-run K is state independent here.
        let re = [1.0, 0.0, 0.0, 0.0];
        let im = [0.0; 4];
        assert_eq!(lgi_config_set_initial_state(cfg, re.as_ptr(), im.as_ptr()), LgiStatus::Ok);
        assert_eq!(lgi_k_statistic(cfg, LGI_ENGINE_SEPARATE, &mut c), LgiStatus::Ok);
        assert!((c.k - 1.5).abs() < 1e-12);

        let bad = [2.0, 0.0, 0.0, 0.0];
        assert_eq!(
            lgi_config_set_initial_state(cfg, bad.as_ptr(), im.as_ptr()),
            LgiStatus::InvalidState
        );
        assert_eq!(
            lgi_config_set_initial_state(cfg, ptr::null(), im.as_ptr()),
            LgiStatus::NullPointer
        );

        // σx observable: the single-run circuit only supports σz.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(lgi_config_set_observable(cfg, h, 0.0, h, 0.0), LgiStatus::Ok);
        assert_eq!(
            lgi_k_statistic(cfg, LGI_ENGINE_SIMULTANEOUS, &mut c),
            LgiStatus::Unsupported
        );
        assert_eq!(lgi_config_set_theta(cfg, 0.1), LgiStatus::Ok);
        lgi_config_free(cfg);
    }
}

#[test]
fn sweep_handle() {
    let grid = [0.0, PI / 6.0, PI / 2.0];
    let mut sweep = ptr::null_mut();
    unsafe {
        assert_eq!(
            lgi_sweep_new(ptr::null(), grid.as_ptr(), grid.len(), LGI_ENGINE_SEPARATE, &mut sweep),
            LgiStatus::Ok
        );
        assert_eq!(lgi_sweep_len(sweep), 3);
        let (mut theta, mut c) = (0.0, LgiCorrelators::default());
        assert_eq!(lgi_sweep_get(sweep, 1, &mut theta, &mut c), LgiStatus::Ok);
        assert_eq!(theta, PI / 6.0);
        assert!((c.k - 1.5).abs() < 1e-12);
        assert_eq!(lgi_sweep_get(sweep, 3, &mut theta, &mut c), LgiStatus::InvalidArgument);
        lgi_sweep_free(sweep);

        assert_eq!(
            lgi_sweep_new(ptr::null(), grid.as_ptr(), 0, LGI_ENGINE_SEPARATE, &mut sweep),
            LgiStatus::InvalidArgument
        );
        assert_eq!(
            lgi_sweep_new(ptr::null(), grid.as_ptr(), 3, 9, &mut sweep),
            LgiStatus::InvalidArgument
        );
        assert_eq!(lgi_sweep_len(ptr::null()), 0);
        lgi_sweep_free(ptr::null_mut());
        lgi_config_free(ptr::null_mut());
    }
}

#[test]
fn invasiveness_reports() {
    let theta = 0.4;
    let mut out = [LgiPerturbation::default(); 3];
    unsafe {
        assert_eq!(lgi_invasiveness(theta, out.as_mut_ptr()), LgiStatus::Ok);
    }
    let s = (2.0 * theta).sin();
    assert!((out[0].displacement[1] + s).abs() < 1e-12);
    assert!((out[1].displacement[1] - s).abs() < 1e-12);
    assert!(out[2].displacement.iter().all(|d| d.abs() < 1e-12));
}

#[test]
fn macrorealist_and_thermal() {
    let mut c = LgiCorrelators::default();
    unsafe {
        assert_eq!(lgi_macrorealist_k(0.25, 0.5, 0.0, &mut c), LgiStatus::Ok);
        assert!((c.k - 0.75).abs() < 1e-12);
        assert_eq!(lgi_macrorealist_k(1.0, 0.5, 1.0, &mut c), LgiStatus::Ok);
        assert!((c.k - 3.0).abs() < 1e-12);
        assert_eq!(lgi_macrorealist_k(1.5, 0.5, 0.0, &mut c), LgiStatus::InvalidArgument);

        let mut eps = 0.0;
        assert_eq!(lgi_thermal_epsilon(1.41060679736e-26, 11.7, 300.0, &mut eps), LgiStatus::Ok);
        assert!(eps > 1e-5 && eps < 3e-5);
        assert_eq!(
            lgi_thermal_epsilon(1.0e-26, 1.0, -1.0, &mut eps),
            LgiStatus::InvalidArgument
        );
        assert_eq!(
            lgi_thermal_epsilon(1.0e-26, 1.0, 1.0, ptr::null_mut()),
            LgiStatus::NullPointer
        );
    }
}

#[test]
fn status_messages_are_static() {
    for s in [LgiStatus::Ok, LgiStatus::NullPointer, LgiStatus::Panic] {
        let msg = unsafe { CStr::from_ptr(lgi_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}

fn header_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/lgi.h")
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(header_path()).unwrap();
    for name in [
        "lgi_status_message",
        "lgi_last_error",
        "lgi_config_new",
        "lgi_config_free",
        "lgi_config_set_theta",
        "lgi_config_set_initial_state",
        "lgi_config_set_observable",
        "lgi_correlator",
        "lgi_k_statistic",
        "lgi_sweep_new",
        "lgi_sweep_len",
        "lgi_sweep_get",
        "lgi_sweep_free",
        "lgi_invasiveness",
        "lgi_macrorealist_k",
        "lgi_thermal_epsilon",
        "typedef struct LgiConfig LgiConfig",
        "LGI_STATUS_OK = 0",
        "LGI_ENGINE_INRM 2",
    ] {
        assert!(header.contains(name), "header missing {name}");
    }
}

// Compiles tests/c/smoke.c against the header and static library. Skipped
// when no C compiler or static archive is available.
#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let target = tmp.parent().unwrap();
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("liblgi_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = tmp.join("lgi_smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exited with {:?}: {}", out.status, String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
