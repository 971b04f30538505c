/* Prints the adjacency spectrum of a seeded random quaternion gain graph. */
#include <stdio.h>

#include "dualgain.h"

int main(void) {
  DgGraph *g = NULL;
  if (dg_graph_random(6, 0.6, 42, DG_RING_QUATERNION, &g) != DG_STATUS_OK) {
    fprintf(stderr, "error: %s\n", dg_last_error_message());
    return 1;
  }
  DgDualNumber values[6];
  size_t len = 0;
  if (dg_spectrum(g, DG_MATRIX_ADJACENCY, values, 6, &len) != DG_STATUS_OK) {
    fprintf(stderr, "error: %s\n", dg_last_error_message());
    dg_graph_free(g);
    return 1;
  }
  for (size_t k = 0; k < len; k++) {
    printf("lambda_%zu = %.10f %+.10f eps\n", k + 1, values[k].std, values[k].dual);
  }
  dg_graph_free(g);
  return 0;
}
