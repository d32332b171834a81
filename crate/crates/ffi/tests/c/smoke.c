#include <stdio.h>
#include <string.h>
#include "qflag.h"

int main(void) {
    QflagBasis *b = NULL;
    uintptr_t word[] = {1, 2, 1};
    if (qflag_basis_new("A2", word, 3, &b) != QflagStatus_Ok) return 1;
    uintptr_t rank = 0, len = 0;
    if (qflag_basis_dims(b, &rank, &len) != QflagStatus_Ok || rank != 2 || len != 3) return 2;
    int64_t datum[3];
    if (qflag_basis_flag_minor(b, 3, datum) != QflagStatus_Ok) return 3;
    if (datum[0] != 1 || datum[1] != 0 || datum[2] != 1) return 4;
    char *s = NULL;
    if (qflag_basis_coordinates(b, "E1 + + E2", false, &s) != QflagStatus_Syntax) return 5;
    if (strstr(qflag_last_error(), "offset 5") == NULL) return 6;
    if (qflag_basis_element(b, datum, 3, &s) != QflagStatus_Ok) return 7;
    printf("%s\n", s);
    qflag_string_free(s);
    qflag_basis_free(b);
    return 0;
}
