#include "omni/letters.hpp"

#include <array>
#include <cctype>
#include <map>

namespace omni {

namespace {

// 5x7 cell rasters, row-major, '#' = ink.
const std::map<char, std::array<const char*, 7>>& glyphs() {
  static const std::map<char, std::array<const char*, 7>> table = {
      {'A', {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
      {'C', {".####", "#....", "#....", "#....", "#....", "#....", ".####"}},
      {'D', {"####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."}},
      {'E', {"#####", "#....", "#....", "####.", "#....", "#....", "#####"}},
      {'F', {"#####", "#....", "#....", "####.", "#....", "#....", "#...."}},
      {'H', {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
      {'I', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "#####"}},
      {'J', {"#####", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."}},
      {'L', {"#....", "#....", "#....", "#....", "#....", "#....", "#####"}},
      {'N', {"#...#", "##..#", "##..#", "#.#.#", "#..##", "#..##", "#...#"}},
      {'O', {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
      {'T', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
      {'U', {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
      {' ', {".....", ".....", ".....", ".....", ".....", ".....", "....."}},
  };
  return table;
}

}  // namespace

bool letter_supported(char letter) {
  return glyphs().count(static_cast<char>(std::toupper(letter))) > 0;
}

void draw_letter(RealGrid& image, char letter, int x0, int y0, int width, int height,
                 double value) {
  const char up = static_cast<char>(std::toupper(letter));
  const auto it = glyphs().find(up);
  if (it == glyphs().end())
    throw data_error(std::string("draw_letter: unsupported letter '") + letter + "'");
  const auto& rows = it->second;
  for (int y = 0; y < height; ++y) {
    const int py = y0 + y;
    if (py < 0 || py >= image.height()) continue;
    const int cell_y = y * 7 / height;
    for (int x = 0; x < width; ++x) {
      const int px = x0 + x;
      if (px < 0 || px >= image.width()) continue;
      const int cell_x = x * 5 / width;
      if (rows[cell_y][cell_x] == '#') image(px, py) = value;
    }
  }
}

}  // namespace omni
