#include <stdio.h>
#include "coring_lab.h"
// cc -I include smoke.c ../../target/release/libcoring_lab_ffi.a -lpthread -ldl -lm
int main(int argc, char **argv) {
  CoringLabWorkspace *ws = NULL;
  if (coring_lab_workspace_load(argv[1], &ws) != CORING_LAB_STATUS_OK) { printf("%s\n", coring_lab_last_error()); return 2; }
  size_t dims[5], n = 0;
  CoringLabStatus s = coring_lab_cartier_dims(ws, "dualnum", 4, dims, 5, &n);
  printf("status %d:", s); for (size_t i = 0; i < n; i++) printf(" %zu", dims[i]); printf("\n");
  CoringLabOptions o = coring_lab_options_default(); o.coring = "dualnum";
  CoringLabReport *r = NULL;
  s = coring_lab_run(ws, "cartier", &o, &r);
  printf("run %d\n%s", s, coring_lab_report_text(r));
  coring_lab_report_free(r); coring_lab_workspace_free(ws);
  return 0;
}
