"""sparsebench: adaptive shrinkage-thresholding solvers and benchmark harness."""
