/* Copyright 2026 The patdist Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Plain C client: the header must compile as C and the library must link
 * without a C++ driver.
 */

#include <stdio.h>

#include "patdist/patdist.h"

int main(void) {
  pd_model* model = NULL;
  pd_dist* dist = NULL;
  pd_stats stats;
  int rc = 1;
  if (pd_model_iid("ACGT", "uniform", &model) != PD_OK) goto done;
  if (pd_dist_cost(PD_ALGO_BOM, "ACGTAC", model, 40, 0, &dist, NULL) != PD_OK) goto done;
  if (pd_dist_stats(dist, &stats) != PD_OK) goto done;
  printf("bom ACGTAC n=40 mean %.6f\n", stats.mean);
  rc = (stats.min >= 1 && stats.max <= 6 * 35) ? 0 : 1;
done:
  if (rc) fprintf(stderr, "error: %s\n", pd_last_error());
  pd_dist_free(dist);
  pd_model_free(model);
  return rc;
}
