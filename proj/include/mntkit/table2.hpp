#pragma once

#include <string>
#include <vector>

#include "mntkit/families.hpp"

namespace mnt::table2 {

/// One row of the published table of families with h <= 6, stored exactly as
/// printed (including its misprints). Coefficients run from the leading term.
struct PrintedRow {
  int k;
  int h;
  long q[3];
  long r[3];
  long t[2];
  const char* q_text;
  const char* r_text;
  const char* t_text;
};

// Data version 1. Rows appear in the table's reading order (by h, then k).
inline const std::vector<PrintedRow>& rows() {
  static const std::vector<PrintedRow> data = {
    {3, 1, {3, 0, -1}, {3, 3, 1}, {-3, -1}, "3x^2 - 1", "3x^2 + 3x + 1", "-3x - 1"},
    {4, 1, {1, 1, 1}, {1, 2, 2}, {-1, 0}, "x^2 + x + 1", "x^2 + 2x + 2", "-x"},
    {6, 1, {1, 0, 1}, {1, 1, 1}, {-1, 1}, "x^2 + 1", "x^2 + x + 1", "-x + 1"},
    {3, 2, {2, 1, 1}, {1, 1, 1}, {-1, 0}, "2x^2 + x + 1", "x^2 + x + 1", "-x"},
    {3, 2, {14, 3, -1}, {7, 5, 1}, {-7, -2}, "14x^2 + 3x - 1", "7x^2 + 5x + 1", "-7x - 2"},
    {3, 2, {14, 17, 4}, {7, 5, 1}, {7, 3}, "14x^2 + 17x + 4", "7x^2 + 5x + 1", "7x + 3"},
    {4, 2, {4, 2, 1}, {2, 2, 1}, {-2, 0}, "4x^2 + 2x + 1", "2x^2 + 2x + 1", "-2x"},
    {6, 2, {2, 1, 2}, {1, 1, 1}, {-1, 1}, "2x^2 + x + 2", "x^2 + x + 1", "-x + 1"},
    {6, 2, {6, 3, 1}, {3, 3, 1}, {-3, 0}, "6x^2 + 3x + 1", "3x^2 + 3x + 1", "-3x"},
    {3, 3, {3, 2, 2}, {1, 1, 1}, {-1, 0}, "3x^2 + 2x + 2", "x^2 + x + 1", "-x"},
    {4, 3, {5, 9, 9}, {1, 2, 2}, {-1, 0}, "5x^2 + 9x + 9", "x^2 + 2x + 2", "-x"},
    {4, 3, {25, 15, 3}, {5, 4, 1}, {-5, -1}, "25x^2 + 15x + 3", "5x^2 + 4x + 1", "-5x - 1"},
    {4, 3, {25, 25, 7}, {5, 6, 2}, {-5, -2}, "25x^2 + 25x + 7", "5x^2 + 6x + 2", "-5x - 2"},
    {6, 3, {3, 2, 3}, {1, 1, 1}, {-1, 1}, "3x^2 + 2x + 3", "x^2 + x + 1", "-x + 1"},
    {6, 3, {9, 6, 2}, {3, 3, 1}, {-3, 0}, "9x^2 + 6x + 2", "3x^2 + 3x + 1", "-3x"},
    {6, 3, {21, 8, 1}, {7, 5, 1}, {-7, -1}, "21x^2 + 8x + 1", "7x^2 + 5x + 1", "-7x - 1"},
    {6, 3, {21, 22, 6}, {7, 5, 1}, {7, 4}, "21x^2 + 22x + 6", "7x^2 + 5x + 1", "7x + 4"},
    {3, 4, {4, 3, 3}, {1, 1, 1}, {-1, 0}, "4x^2 + 3x + 3", "x^2 + x + 1", "-x"},
    {3, 4, {12, 9, 2}, {3, 3, 1}, {-3, -1}, "12x^2 + 9x + 2", "3x^2 + 3x + 1", "-3x - 1"},
    {3, 4, {28, 13, 1}, {7, 5, 1}, {-7, -2}, "28x^2 + 13x + 1", "7x^2 + 5x + 1", "-7x - 2"},
    {3, 4, {28, 27, 6}, {7, 5, 1}, {7, 3}, "28x^2 + 27x + 6", "7x^2 + 5x + 1", "7x + 3"},
    {4, 4, {8, 6, 3}, {2, 2, 1}, {-2, 0}, "8x^2 + 6x + 3", "2x^2 + 2x + 1", "-2x"},
    {6, 4, {4, 3, 4}, {1, 1, 1}, {-1, 1}, "4x^2 + 3x + 4", "x^2 + x + 1", "-x + 1"},
    {6, 4, {28, 13, 2}, {7, 5, 1}, {-7, -1}, "28x^2 + 13x + 2", "7x^2 + 5x + 1", "-7x - 1"},
    {6, 4, {28, 27, 7}, {7, 5, 1}, {7, 4}, "28x^2 + 27x + 7", "7x^2 + 5x + 1", "7x + 4"},
    {6, 4, {52, 15, 1}, {13, 7, 1}, {-13, -2}, "52x^2 + 15x + 1", "13x^2 + 7x + 1", "-13x - 2"},
    {6, 4, {52, 41, 8}, {13, 7, 1}, {13, 5}, "52x^2 + 41x + 8", "13x^2 + 7x + 1", "13x + 5"},
    {3, 5, {5, 4, 4}, {1, 1, 1}, {-1, 0}, "5x^2 + 4x + 4", "x^2 + x + 1", "-x"},
    {3, 5, {35, 18, 2}, {7, 5, 1}, {-7, -2}, "35x^2 + 18x + 2", "7x^2 + 5x + 1", "-7x - 2"},
    {3, 5, {35, 32, 7}, {7, 5, 1}, {7, 3}, "35x^2 + 32x + 7", "7x^2 + 5x + 1", "7x + 3"},
    {3, 5, {65, 22, 1}, {13, 7, 1}, {-13, -3}, "65x^2 + 22x + 1", "13x^2 + 7x + 1", "-13x - 3"},
    {3, 5, {65, 48, 8}, {13, 7, 1}, {13, 4}, "65x^2 + 48x + 8", "13x^2 + 7x + 1", "13x + 4"},
    {3, 5, {95, 56, 7}, {19, 15, 3}, {-19, -7}, "95x^2 + 56x + 7", "19x^2 + 15x + 3", "-19x - 7"},
    {3, 5, {95, 94, 22}, {19, 15, 3}, {19, 8}, "95x^2 + 94x + 22", "19x^2 + 15x + 3", "19x + 8"},
    {4, 5, {5, 9, 9}, {1, 2, 2}, {-1, 0}, "5x^2 + 9x + 9", "x^2 + 2x + 2", "-x"},
    {4, 5, {25, 15, 3}, {5, 4, 1}, {-5, -1}, "25x^2 + 15x + 3", "5x^2 + 4x + 1", "-5x - 1"},
    {4, 5, {25, 25, 7}, {5, 6, 2}, {-5, -2}, "25x^2 + 25x + 7", "5x^2 + 6x + 2", "-5x - 2"},
    {4, 5, {65, 37, 5}, {13, 10, 2}, {-13, -4}, "65x^2 + 37x + 5", "13x^2 + 10x + 2", "-13x - 4"},
    {4, 5, {65, 63, 15}, {13, 10, 2}, {13, 6}, "65x^2 + 63x + 15", "13x^2 + 10x + 2", "13x + 6"},
    {4, 5, {85, 23, 1}, {17, 8, 1}, {-17, -3}, "85x^2 + 23x + 1", "17x^2 + 8x + 1", "-17x - 3"},
    {4, 5, {85, 57, 9}, {17, 8, 1}, {17, 5}, "85x^2 + 57x + 9", "17x^2 + 8x + 1", "17x + 5"},
    {6, 5, {5, 4, 5}, {1, 1, 1}, {-1, 1}, "5x^2 + 4x + 5", "x^2 + x + 1", "-x + 1"},
    {6, 5, {15, 12, 4}, {3, 3, 1}, {-3, 0}, "15x^2 + 12x + 4", "3x^2 + 3x + 1", "-3x"},
    {6, 5, {35, 18, 3}, {7, 5, 1}, {-7, -1}, "35x^2 + 18x + 3", "7x^2 + 5x + 1", "-7x - 1"},
    {6, 5, {35, 32, 8}, {7, 5, 1}, {7, 4}, "35x^2 + 32x + 8", "7x^2 + 5x + 1", "7x + 4"},
    {6, 5, {65, 22, 2}, {13, 7, 1}, {-13, -2}, "65x^2 + 22x + 2", "13x^2 + 7x + 1", "-13x - 2"},
    {6, 5, {65, 48, 9}, {13, 7, 1}, {13, 5}, "65x^2 + 48x + 9", "13x^2 + 7x + 1", "13x + 5"},
    {6, 5, {95, 56, 8}, {19, 5, 3}, {-19, -6}, "95x^2 + 56x + 8", "19x^2 + 5x + 3", "-19x - 6"},
    {6, 5, {95, 94, 23}, {19, 5, 3}, {19, 9}, "95x^2 + 94x + 23", "19x^2 + 5x + 3", "19x + 9"},
    {3, 6, {6, 5, 5}, {1, 1, 1}, {-1, 0}, "6x^2 + 5x + 5", "x^2 + x + 1", "-x"},
    {3, 6, {18, 0, 19}, {3, 3, 1}, {-3, -1}, "18x^2 + 15 + 4", "3x^2 + 3x + 1", "-3x - 1"},
    {3, 6, {78, 29, 2}, {13, 7, 1}, {-13, -3}, "78x^2 + 29x + 2", "13x^2 + 7x + 1", "-13x - 3"},
    {3, 6, {78, 55, 9}, {13, 7, 1}, {13, 4}, "78x^2 + 55x + 9", "13x^2 + 7x + 1", "13x + 4"},
    {3, 6, {114, 71, 10}, {19, 15, 3}, {-19, -7}, "114x^2 + 71x + 10", "19x^2 + 15x + 3", "-19x - 7"},
    {3, 6, {114, 109, 25}, {19, 15, 3}, {19, 8}, "114x^2 + 109x + 25", "19x^2 + 15x + 3", "19x + 8"},
    {3, 6, {126, 33, 1}, {21, 9, 1}, {-21, -4}, "126x^2 + 33x + 1", "21x^2 + 9x + 1", "-21x - 4"},
    {3, 6, {126, 75, 10}, {21, 9, 1}, {21, 5}, "126x^2 + 75x + 10", "21x^2 + 9x + 1", "21x + 5"},
    {4, 6, {12, 10, 5}, {2, 2, 1}, {-2, 0}, "12x^2 + 10x + 5", "2x^2 + 2x + 1", "-2x"},
    {4, 6, {60, 26, 3}, {10, 6, 1}, {-10, -2}, "60x^2 + 26x + 3", "10x^2 + 6x + 1", "-10x - 2"},
    {4, 6, {60, 46, 9}, {10, 6, 1}, {10, 4}, "60x^2 + 46x + 9", "10x^2 + 6x + 1", "10x + 4"},
    {4, 6, {102, 31, 2}, {17, 8, 1}, {-17, -3}, "102x^2 + 31x + 2", "17x^2 + 8x + 1", "-17x - 3"},
    {4, 6, {102, 65, 10}, {17, 8, 1}, {17, 5}, "102x^2 + 65x + 10", "17x^2 + 8x + 1", "17x + 5"},
    {6, 6, {6, 5, 6}, {1, 1, 1}, {-1, 1}, "6x^2 + 5x + 6", "x^2 + x + 1", "-x + 1"},
    {6, 6, {18, 15, 5}, {3, 3, 1}, {-3, 0}, "18x^2 + 15x + 5", "3x^2 + 3x + 1", "-3x"},
    {6, 6, {42, 23, 4}, {7, 5, 1}, {-7, -1}, "42x^2 + 23x + 4", "7x^2 + 5x + 1", "-7x - 1"},
    {6, 6, {42, 37, 9}, {7, 5, 1}, {7, 4}, "42x^2 + 37x + 9", "7x^2 + 5x + 1", "7x + 4"},
    {6, 6, {78, 29, 3}, {13, 7, 1}, {-13, -2}, "78x^2 + 29x + 3", "13x^2 + 7x + 1", "-13x - 2"},
    {6, 6, {78, 55, 10}, {13, 7, 1}, {13, 5}, "78x^2 + 55x + 10", "13x^2 + 7x + 1", "13x + 5"},  };
  return data;
}

/// The row as a family record; d is recomputed from t since the table omits it.
inline Family as_printed(const PrintedRow& row) {
  EmbeddingDegree k = embedding_degree(row.k);
  LinPoly t{row.t[0], row.t[1]};
  return {k, row.h, split_d_r(k, t).d, t, QuadPoly(row.r[0], row.r[1], row.r[2]),
          QuadPoly(row.q[0], row.q[1], row.q[2])};
}

/// Rebuilds r and q from the printed trace: r from the cyclotomic split,
/// q = h*r + t - 1.
inline Family corrected(const PrintedRow& row) {
  EmbeddingDegree k = embedding_degree(row.k);
  LinPoly t{row.t[0], row.t[1]};
  DrSplit split = split_d_r(k, t);
  Integer h = row.h;
  return {k, h, split.d, t, split.r, h * split.r + t - 1};
}

inline std::string label(const PrintedRow& row) {
  return "k=" + std::to_string(row.k) + " h=" + std::to_string(row.h) + " t=" + row.t_text;
}

struct RowAudit {
  const PrintedRow* row;
  FamilyReport printed;    ///< checks on the row as printed
  FamilyReport corrected;  ///< checks after rebuilding r and q from t
  bool q_matches_corrected;
  bool r_matches_corrected;
};

inline std::vector<RowAudit> audit() {
  std::vector<RowAudit> out;
  for (const auto& row : rows()) {
    Family p = as_printed(row);
    Family c = corrected(row);
    out.push_back({&row, verify_family(p), verify_family(c), p.q == c.q, p.r == c.r});
  }
  return out;
}

}  // namespace mnt::table2
