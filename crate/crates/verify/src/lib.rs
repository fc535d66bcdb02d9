//! Holds the `acceptance` test target, which runs last in a workspace test
//! run so that its verdict never hides the results of the other suites.
