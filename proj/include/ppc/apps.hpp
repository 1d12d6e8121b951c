/*!
  \file apps.hpp
  \brief Fixed-point application pipelines: 3x3 Gaussian filter, image
         blending, signal tracing and quality/literal sweep tables
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "image.hpp"
#include "sparsity.hpp"
#include "truth_table.hpp"
#include "twolevel/segmented.hpp"

namespace ppc
{

/*! \brief Per-signal histograms of a pipeline run, plus which signals feed which block. */
class signal_trace
{
public:
  struct signal
  {
    std::string name;
    histogram hist;
  };

  struct block
  {
    std::string name;
    std::size_t a, b, out; ///< signal indices
  };

  std::size_t add_signal( std::string name, unsigned wl )
  {
    signals_.push_back( { std::move( name ), histogram( wl ) } );
    return signals_.size() - 1u;
  }

  void add_block( std::string name, std::size_t a, std::size_t b, std::size_t out )
  {
    blocks_.push_back( { std::move( name ), a, b, out } );
  }

  void record( std::size_t s, std::uint64_t v ) { signals_[s].hist.add( v ); }

  std::vector<signal> const& signals() const { return signals_; }
  std::vector<block> const& blocks() const { return blocks_; }

  signal const& find( std::string const& name ) const
  {
    for ( auto const& s : signals_ )
    {
      if ( s.name == name )
      {
        return s;
      }
    }
    throw parameter_error( "no traced signal named '" + name + "'" );
  }

private:
  std::vector<signal> signals_;
  std::vector<block> blocks_;
};

struct signal_summary
{
  std::string name;
  unsigned wl{ 0u };
  value_set observed;
  double sparsity{ 0.0 };     ///< 1 - |observed| / 2^wl
  unsigned cleared_low_bits{ 0u };
  bool ds_like{ false };      ///< every observed value has its low bit(s) cleared
};

struct block_summary
{
  std::string name;
  double pair_sparsity{ 0.0 }; ///< 1 - |A| |B| / 2^(wa + wb)
  bool ds_like_inputs{ false };
};

struct trace_summary
{
  std::vector<signal_summary> signals;
  std::vector<block_summary> blocks;

  signal_summary const& signal( std::string const& name ) const
  {
    for ( auto const& s : signals )
    {
      if ( s.name == name )
      {
        return s;
      }
    }
    throw parameter_error( "no traced signal named '" + name + "'" );
  }

  block_summary const& block( std::string const& name ) const
  {
    for ( auto const& b : blocks )
    {
      if ( b.name == name )
      {
        return b;
      }
    }
    throw parameter_error( "no traced block named '" + name + "'" );
  }
};

inline trace_summary trace_report( signal_trace const& trace )
{
  trace_summary rep;
  for ( auto const& s : trace.signals() )
  {
    signal_summary ss;
    ss.name = s.name;
    ss.wl = s.hist.wl();
    ss.observed = s.hist.support();
    ss.sparsity = 1.0 - static_cast<double>( ss.observed.size() ) / static_cast<double>( domain_size( ss.wl ) );
    ss.cleared_low_bits = ss.observed.empty() ? 0u : std::min( ss.observed.common_zero_low_bits(), ss.wl );
    ss.ds_like = ss.observed.size() > 1u && ss.cleared_low_bits > 0u;
    rep.signals.push_back( std::move( ss ) );
  }
  for ( auto const& b : trace.blocks() )
  {
    auto const& sa = rep.signals[b.a];
    auto const& sb = rep.signals[b.b];
    block_summary bs;
    bs.name = b.name;
    bs.pair_sparsity = 1.0 - static_cast<double>( sa.observed.size() ) * static_cast<double>( sb.observed.size() ) /
                                 static_cast<double>( domain_size( sa.wl + sb.wl ) );
    bs.ds_like_inputs = sa.ds_like && sb.ds_like;
    rep.blocks.push_back( std::move( bs ) );
  }
  return rep;
}

/*! \brief Applies a chain to every pixel. */
inline image_u8 preprocess_image( image_u8 img, preprocess_chain const& chain )
{
  chain.validate( 8u, interpretation::unsigned_int );
  if ( chain.is_identity() )
  {
    return img;
  }
  std::uint8_t lut[256];
  for ( unsigned v = 0; v < 256u; ++v )
  {
    lut[v] = static_cast<std::uint8_t>( chain_apply( chain, v ) );
  }
  for ( auto& p : img.pixels )
  {
    p = lut[p];
  }
  return img;
}

/*! \brief Word lengths of the Gaussian adder tree, in evaluation order. */
struct gaussian_adder
{
  char const* name;
  unsigned wl_a, wl_b;
};

inline constexpr gaussian_adder gaussian_adders[] = {
    { "adder1", 8u, 8u },   // A1 + A3
    { "adder2", 8u, 8u },   // A7 + A9
    { "adder3", 9u, 9u },   // (A2 << 1) + (A4 << 1)
    { "adder4", 9u, 9u },   // (A6 << 1) + (A8 << 1)
    { "adder5", 9u, 9u },   // corners
    { "adder6", 10u, 10u }, // edges
    { "adder7", 10u, 11u }, // corners + edges
    { "adder8", 12u, 10u }, // + (A5 << 2)
};

struct pipeline_result
{
  image_u8 image;
  signal_trace trace;
};

/*! \brief 3x3 kernel [1 2 1; 2 4 2; 1 2 1] / 16 as a shift-and-add tree, edge-replicated borders. */
inline pipeline_result gaussian_filter( image_u8 const& img, preprocess_chain const& chain )
{
  if ( img.width < 3u || img.height < 3u )
  {
    throw parameter_error( "the Gaussian filter needs an image of at least 3x3 pixels" );
  }
  auto const in = preprocess_image( img, chain );

  pipeline_result r{ image_u8( img.width, img.height ), {} };
  auto& t = r.trace;
  std::size_t sa[8], sb[8], so[8];
  for ( unsigned k = 0; k < 8u; ++k )
  {
    auto const& ad = gaussian_adders[k];
    std::string const n = ad.name;
    sa[k] = t.add_signal( n + ".a", ad.wl_a );
    sb[k] = t.add_signal( n + ".b", ad.wl_b );
    so[k] = t.add_signal( n + ".out", std::max( ad.wl_a, ad.wl_b ) + 1u );
    t.add_block( n, sa[k], sb[k], so[k] );
  }
  auto const s_in = t.add_signal( "input", 8u );
  auto const s_out = t.add_signal( "output", 8u );

  auto add = [&]( unsigned k, std::uint32_t a, std::uint32_t b ) {
    t.record( sa[k], a );
    t.record( sb[k], b );
    t.record( so[k], a + b );
    return a + b;
  };

  for ( unsigned y = 0; y < img.height; ++y )
  {
    for ( unsigned x = 0; x < img.width; ++x )
    {
      auto const X = static_cast<long>( x ), Y = static_cast<long>( y );
      // A1 A2 A3 / A4 A5 A6 / A7 A8 A9
      std::uint32_t const a1 = in.clamped( X - 1, Y - 1 ), a2 = in.clamped( X, Y - 1 ), a3 = in.clamped( X + 1, Y - 1 );
      std::uint32_t const a4 = in.clamped( X - 1, Y ), a5 = in.clamped( X, Y ), a6 = in.clamped( X + 1, Y );
      std::uint32_t const a7 = in.clamped( X - 1, Y + 1 ), a8 = in.clamped( X, Y + 1 ), a9 = in.clamped( X + 1, Y + 1 );
      t.record( s_in, in.at( x, y ) );

      auto const s1 = add( 0, a1, a3 );
      auto const s2 = add( 1, a7, a9 );
      auto const s3 = add( 2, a2 << 1, a4 << 1 );
      auto const s4 = add( 3, a6 << 1, a8 << 1 );
      auto const corner = add( 4, s1, s2 );
      auto const edge = add( 5, s3, s4 );
      auto const s7 = add( 6, corner, edge );
      auto const s8 = add( 7, s7, a5 << 2 );
      auto const out = static_cast<std::uint8_t>( s8 >> 4 );
      t.record( s_out, out );
      r.image.at( x, y ) = out;
    }
  }
  return r;
}

/*! \brief Q0.8 blending coefficient for alpha in [0, 1]. */
inline unsigned alpha_to_int( double alpha )
{
  if ( !( alpha >= 0.0 && alpha <= 1.0 ) )
  {
    throw parameter_error( "alpha must be in [0, 1]" );
  }
  return std::min( 255u, static_cast<unsigned>( alpha * 256.0 + 0.5 ) );
}

/*! coefficients of the two multipliers: c1 = alpha_int, c2 = min(256 - alpha_int, 255) */
inline std::pair<unsigned, unsigned> blend_coefficients( unsigned alpha_int )
{
  if ( alpha_int > 255u )
  {
    throw parameter_error( "alpha_int must be in 0..255" );
  }
  return { alpha_int, std::min( 256u - alpha_int, 255u ) };
}

/*! natural coefficient ranges of the two blend multipliers */
inline natural_range blend_natural_c1() { return { 0, 128 }; }
inline natural_range blend_natural_c2() { return { 128, 255 }; }

/*! \brief out = ((c1 p1) >> 8) + ((c2 p2) >> 8) with two 8x8 keep-high-8 multipliers and an 8-bit adder.
 *
 * The chain is applied to both pixel and coefficient inputs of both
 * multipliers. With `use_natural`, alpha_int must lie in the natural range
 * of the first coefficient.
 */
inline pipeline_result blend( image_u8 const& img1, image_u8 const& img2, unsigned alpha_int,
                              preprocess_chain const& chain, bool use_natural )
{
  if ( img1.width != img2.width || img1.height != img2.height )
  {
    throw parameter_error( "blend: image dimensions differ" );
  }
  auto const [c1, c2] = blend_coefficients( alpha_int );
  if ( use_natural && !blend_natural_c1().contains( c1 ) )
  {
    throw range_error( "alpha_int " + std::to_string( alpha_int ) + " is outside the natural coefficient range [0,128]" );
  }
  chain.validate( 8u, interpretation::unsigned_int );

  auto const mul = block_spec::multiplier( 8u, 8u, interpretation::unsigned_int, interpretation::unsigned_int,
                                           output_policy::truncate_keep_high( 8u ) );
  auto const adder = block_spec::adder( 8u, 8u );
  auto const q1 = chain_apply( chain, c1 ), q2 = chain_apply( chain, c2 );
  auto const p1 = preprocess_image( img1, chain ), p2 = preprocess_image( img2, chain );

  pipeline_result r{ image_u8( img1.width, img1.height ), {} };
  auto& t = r.trace;
  auto const s_p1 = t.add_signal( "mult1.pixel", 8u ), s_c1 = t.add_signal( "mult1.coef", 8u );
  auto const s_o1 = t.add_signal( "mult1.out", 8u );
  auto const s_p2 = t.add_signal( "mult2.pixel", 8u ), s_c2 = t.add_signal( "mult2.coef", 8u );
  auto const s_o2 = t.add_signal( "mult2.out", 8u );
  auto const s_out = t.add_signal( "adder.out", 9u );
  t.add_block( "mult1", s_p1, s_c1, s_o1 );
  t.add_block( "mult2", s_p2, s_c2, s_o2 );
  t.add_block( "adder", s_o1, s_o2, s_out );

  for ( std::size_t i = 0; i < p1.pixels.size(); ++i )
  {
    auto const m1 = mul.evaluate( p1.pixels[i], q1 );
    auto const m2 = mul.evaluate( p2.pixels[i], q2 );
    auto const sum = adder.evaluate( static_cast<encoding>( m1 ), static_cast<encoding>( m2 ) );
    t.record( s_p1, p1.pixels[i] );
    t.record( s_c1, q1 );
    t.record( s_o1, m1 );
    t.record( s_p2, p2.pixels[i] );
    t.record( s_c2, q2 );
    t.record( s_o2, m2 );
    t.record( s_out, sum );
    r.image.pixels[i] = static_cast<std::uint8_t>( std::min<std::uint64_t>( sum, 255u ) );
  }
  return r;
}

/*! \brief {a + b} over a x b, as a `wl`-bit set. */
inline value_set sum_set( value_set const& a, value_set const& b, unsigned wl )
{
  std::vector<bool> m( domain_size( wl ), false );
  auto const bm = b.members();
  a.for_each( [&]( encoding x ) {
    for ( auto y : bm )
    {
      m[x + y] = true;
    }
  } );
  return value_set::from_mask( wl, m );
}

/*! \brief {v << s}, as a `wl`-bit set. */
inline value_set shift_set( value_set const& a, unsigned s, unsigned wl )
{
  std::vector<encoding> v;
  a.for_each( [&]( encoding x ) { v.push_back( x << s ); } );
  return value_set::from_values( wl, std::move( v ) );
}

/*! \brief Same values in a wider domain. */
inline value_set widen( value_set const& a, unsigned wl )
{
  return value_set::from_values( wl, a.members() );
}

inline unsigned round_up( unsigned v, unsigned m ) { return ( v + m - 1u ) / m * m; }

/*! \brief Segmented literal estimate of the Gaussian adder tree when its inputs see `chain`.
 *
 * Operand sets are propagated through the tree assuming independent window
 * pixels; adder widths are padded to multiples of the segment width.
 */
inline std::uint64_t gaussian_literals( preprocess_chain const& chain, unsigned segment_wl, minimize_mode mode,
                                        segment_cache* cache = nullptr )
{
  auto const p = reachable_set( 8u, chain );
  auto const s1 = sum_set( p, p, 9u );
  auto const p2 = shift_set( p, 1u, 9u );
  auto const s3 = sum_set( p2, p2, 10u );
  auto const corner = sum_set( s1, s1, 10u );
  auto const edge = sum_set( s3, s3, 11u );
  auto const s7 = sum_set( corner, edge, 12u );
  auto const p4 = shift_set( p, 2u, 10u );

  std::pair<value_set const*, value_set const*> const operands[] = {
      { &p, &p }, { &p, &p }, { &p2, &p2 }, { &p2, &p2 }, { &s1, &s1 }, { &s3, &s3 }, { &corner, &edge }, { &s7, &p4 } };

  std::uint64_t total = 0u;
  for ( auto const& [a, b] : operands )
  {
    auto const w = round_up( std::max( a->wl(), b->wl() ), segment_wl );
    total += segmented_literal_estimate( block_spec::adder( w, w ), widen( *a, w ), widen( *b, w ), segment_wl, mode, cache )
                 .stats.literals;
  }
  return total;
}

/*! \brief Blend configuration of one sweep row. */
struct blend_config
{
  preprocess_chain chain;
  bool natural{ false };

  std::string label() const
  {
    if ( natural )
    {
      return chain.is_identity() ? "natural" : "natural+" + chain.to_string();
    }
    return chain.is_identity() ? "precise" : chain.to_string();
  }
};

/*! \brief Segmented literal estimate of both blend multipliers and the adder. */
inline std::uint64_t blend_literals( blend_config const& cfg, unsigned segment_wl, minimize_mode mode,
                                     segment_cache* cache = nullptr )
{
  auto const full = natural_range::full( 8u );
  auto const px = reachable_set( 8u, interpretation::unsigned_int, full, cfg.chain );
  auto const c1 = reachable_set( 8u, interpretation::unsigned_int, cfg.natural ? blend_natural_c1() : full, cfg.chain );
  auto const c2 = reachable_set( 8u, interpretation::unsigned_int, cfg.natural ? blend_natural_c2() : full, cfg.chain );
  auto const mul = block_spec::multiplier( 8u, 8u );
  std::uint64_t total = 0u;
  total += segmented_literal_estimate( mul, px, c1, segment_wl, mode, cache ).stats.literals;
  total += segmented_literal_estimate( mul, px, c2, segment_wl, mode, cache ).stats.literals;
  // adder operands are the kept high bytes of the products
  auto high_byte = [&]( value_set const& a, value_set const& b ) {
    std::vector<bool> m( 256u, false );
    auto const bm = b.members();
    a.for_each( [&]( encoding x ) {
      for ( auto y : bm )
      {
        m[( x * y ) >> 8] = true;
      }
    } );
    return value_set::from_mask( 8u, m );
  };
  total += segmented_literal_estimate( block_spec::adder( 8u, 8u ), high_byte( px, c1 ), high_byte( px, c2 ), segment_wl,
                                       mode, cache )
               .stats.literals;
  return total;
}

/*! \brief One row of a quality / cost sweep. */
struct sweep_row
{
  std::string sparsity_spec;
  quality_report quality;
  std::uint64_t literals{ 0u };
  double normalized_literals{ 1.0 };
};

struct sweep_options
{
  unsigned segment_wl{ 4u };
  minimize_mode mode{ minimize_mode::exact };
};

/*! \brief Gaussian sweep; the precise configuration is always evaluated first as the baseline. */
inline std::vector<sweep_row> gaussian_sweep( image_u8 const& img, std::vector<preprocess_chain> const& chains,
                                              sweep_options const& opts = {} )
{
  segment_cache cache;
  auto const ref = gaussian_filter( img, {} ).image;
  auto const base = gaussian_literals( {}, opts.segment_wl, opts.mode, &cache );
  std::vector<sweep_row> rows;
  for ( auto const& c : chains )
  {
    sweep_row r;
    r.sparsity_spec = c.is_identity() ? "precise" : c.to_string();
    r.quality = psnr( ref, gaussian_filter( img, c ).image );
    r.literals = gaussian_literals( c, opts.segment_wl, opts.mode, &cache );
    r.normalized_literals = static_cast<double>( r.literals ) / static_cast<double>( base );
    rows.push_back( std::move( r ) );
  }
  return rows;
}

inline std::vector<sweep_row> blend_sweep( image_u8 const& img1, image_u8 const& img2, unsigned alpha_int,
                                           std::vector<blend_config> const& configs, sweep_options const& opts = {} )
{
  segment_cache cache;
  auto const ref = blend( img1, img2, alpha_int, {}, false ).image;
  auto const base = blend_literals( {}, opts.segment_wl, opts.mode, &cache );
  std::vector<sweep_row> rows;
  for ( auto const& c : configs )
  {
    sweep_row r;
    r.sparsity_spec = c.label();
    r.quality = psnr( ref, blend( img1, img2, alpha_int, c.chain, c.natural ).image );
    r.literals = blend_literals( c, opts.segment_wl, opts.mode, &cache );
    r.normalized_literals = static_cast<double>( r.literals ) / static_cast<double>( base );
    rows.push_back( std::move( r ) );
  }
  return rows;
}

inline std::string format_psnr( quality_report const& q )
{
  if ( q.infinite() )
  {
    return "inf";
  }
  char buf[32];
  std::snprintf( buf, sizeof( buf ), "%.4f", q.psnr_db );
  return buf;
}

inline std::string sweep_csv( std::vector<sweep_row> const& rows )
{
  std::string out = "sparsity_spec,psnr_db,literals,normalized_literals\n";
  for ( auto const& r : rows )
  {
    char buf[32];
    std::snprintf( buf, sizeof( buf ), "%.6f", r.normalized_literals );
    out += r.sparsity_spec + "," + format_psnr( r.quality ) + "," + std::to_string( r.literals ) + "," + buf + "\n";
  }
  return out;
}

} // namespace ppc
