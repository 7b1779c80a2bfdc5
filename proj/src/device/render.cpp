#include "phoneagent/device/render.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace phoneagent {
namespace {

#include "glyphs.inc"

struct Rgb {
  std::uint8_t r, g, b;
};

class Canvas {
 public:
  Canvas(int width, int height, Rgb fill)
      : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height * 3) {
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
      pixels_[i] = fill.r;
      pixels_[i + 1] = fill.g;
      pixels_[i + 2] = fill.b;
    }
  }

  void fill_rect(Box box, Rgb color) {
    const int x0 = std::max(0, box.x), y0 = std::max(0, box.y);
    const int x1 = std::min(width_, box.x + box.width), y1 = std::min(height_, box.y + box.height);
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) put(x, y, color);
    }
  }

  void outline(Box box, Rgb color, int thickness) {
    fill_rect({box.x, box.y, box.width, thickness}, color);
    fill_rect({box.x, box.y + box.height - thickness, box.width, thickness}, color);
    fill_rect({box.x, box.y, thickness, box.height}, color);
    fill_rect({box.x + box.width - thickness, box.y, thickness, box.height}, color);
  }

  void dim() {
    for (auto& v : pixels_) v = static_cast<std::uint8_t>(v / 2);
  }

  // Draws `text` at scale `s`, clipped to `clip`.
  void text(std::string_view text, int x, int y, int s, Rgb color, Box clip) {
    for (char c : text) {
      const int code = static_cast<unsigned char>(c);
      const int glyph = code >= 32 && code < 127 ? code - 32 : '?' - 32;
      for (int row = 0; row < kGlyphHeight; ++row) {
        const unsigned bits = kGlyphs[glyph][row];
        for (int col = 0; col < kGlyphWidth; ++col) {
          if ((bits >> (kGlyphWidth - 1 - col) & 1U) == 0) continue;
          for (int dy = 0; dy < s; ++dy) {
            for (int dx = 0; dx < s; ++dx) {
              const Point p{x + col * s + dx, y + row * s + dy};
              if (clip.contains(p)) put(p.x, p.y, color);
            }
          }
        }
      }
      x += kGlyphWidth * s;
      if (x >= clip.x + clip.width) break;
    }
  }

  ImageBytes encode_png() const {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    ImageBytes out;
    if (info == nullptr || setjmp(png_jmpbuf(png))) {
      png_destroy_write_struct(&png, &info);
      throw std::runtime_error("PNG encoding failed");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t length) {
          auto* buffer = static_cast<ImageBytes*>(png_get_io_ptr(p));
          buffer->insert(buffer->end(), data, data + length);
        },
        nullptr);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width_), static_cast<png_uint_32>(height_), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    for (int y = 0; y < height_; ++y) {
      png_write_row(png, const_cast<png_bytep>(&pixels_[static_cast<std::size_t>(y) * width_ * 3]));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
  }

 private:
  void put(int x, int y, Rgb c) {
    auto* p = &pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

Rgb fill_for(ElementKind kind) {
  switch (kind) {
    case ElementKind::Button: return {206, 224, 255};
    case ElementKind::TextField: return {255, 255, 255};
    case ElementKind::ListItem: return {236, 236, 236};
    case ElementKind::Icon: return {255, 226, 180};
    case ElementKind::StaticText: return {250, 250, 250};
  }
  return {255, 255, 255};
}

void draw_element(Canvas& canvas, const SimElement& e) {
  constexpr Rgb kBorder{60, 60, 60};
  constexpr Rgb kFocus{30, 110, 230};
  constexpr Rgb kInk{20, 20, 20};
  constexpr Rgb kHint{150, 150, 150};
  canvas.fill_rect(e.box, fill_for(e.kind));
  if (e.kind != ElementKind::StaticText) canvas.outline(e.box, e.focused ? kFocus : kBorder, e.focused ? 4 : 2);

  const int scale = e.box.height >= 2 * kGlyphHeight * 2 ? 2 : 1;
  const int text_y = e.box.y + (e.box.height - kGlyphHeight * scale) / 2;
  if (e.kind == ElementKind::TextField) {
    const bool empty = e.content.empty();
    canvas.text(empty ? e.label : e.content, e.box.x + 10, text_y, scale, empty ? kHint : kInk, e.box);
  } else {
    const std::string text = e.content.empty() ? e.label : e.label + "  " + e.content;
    canvas.text(text, e.box.x + 10, text_y, scale, kInk, e.box);
  }
}

}  // namespace

ImageBytes render_screen(const AppGraph& graph, const SimTruth& truth) {
  Canvas canvas(graph.width, graph.height, {245, 245, 245});
  const GraphPage* page = graph.find_page(truth.page);
  const std::string title = page != nullptr && !page->title.empty() ? page->title : truth.page;
  const Box status{0, 0, graph.width, std::min(graph.height, 28)};
  canvas.fill_rect(status, {40, 40, 40});
  canvas.text(title, 8, 8, 1, {240, 240, 240}, status);

  std::size_t overlay_start = truth.elements.size();
  if (!truth.overlay.empty()) {
    const GraphPage* overlay = graph.find_page(truth.overlay);
    overlay_start -= overlay != nullptr ? overlay->elements.size() : 0;
  }
  for (std::size_t i = 0; i < overlay_start; ++i) draw_element(canvas, truth.elements[i]);
  if (!truth.overlay.empty()) {
    canvas.dim();
    for (std::size_t i = overlay_start; i < truth.elements.size(); ++i) draw_element(canvas, truth.elements[i]);
  }
  return canvas.encode_png();
}

std::optional<std::pair<int, int>> png_dimensions(std::span<const std::uint8_t> png) {
  static constexpr std::array<std::uint8_t, 8> kSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (png.size() < 24 || !std::equal(kSignature.begin(), kSignature.end(), png.begin())) return std::nullopt;
  auto be32 = [&](std::size_t at) {
    return static_cast<int>(static_cast<std::uint32_t>(png[at]) << 24 | static_cast<std::uint32_t>(png[at + 1]) << 16 |
                            static_cast<std::uint32_t>(png[at + 2]) << 8 | static_cast<std::uint32_t>(png[at + 3]));
  };
  return std::pair{be32(16), be32(20)};
}

}  // namespace phoneagent
