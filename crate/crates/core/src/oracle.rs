//! Brute-force reference implementations, independent of the production
//! kernels, used by the verification suites in this workspace.
