/* The public header must compile as C. */
#include <stdio.h>

#include "fitrec.h"

int main(void) {
    fr_reconstruct_options opt;
    fr_reconstruct_options_init(&opt);
    if (opt.properties != FR_PROP_ALL) return 1;
    printf("fitrec %s\n", fr_version());
    return 0;
}
