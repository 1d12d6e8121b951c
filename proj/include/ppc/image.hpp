/*!
  \file image.hpp
  \brief 8-bit grayscale images, PGM (P5/P2, maxval 255) and PSNR
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace ppc
{

struct image_u8
{
  unsigned width{ 0u };
  unsigned height{ 0u };
  std::vector<std::uint8_t> pixels; ///< row-major

  image_u8() = default;
  image_u8( unsigned w, unsigned h, std::uint8_t fill = 0u ) : width( w ), height( h ), pixels( std::size_t{ w } * h, fill ) {}

  std::uint8_t& at( unsigned x, unsigned y ) { return pixels[std::size_t{ y } * width + x]; }
  std::uint8_t at( unsigned x, unsigned y ) const { return pixels[std::size_t{ y } * width + x]; }

  /*! edge-replicated access */
  std::uint8_t clamped( long x, long y ) const
  {
    x = std::clamp<long>( x, 0, static_cast<long>( width ) - 1 );
    y = std::clamp<long>( y, 0, static_cast<long>( height ) - 1 );
    return at( static_cast<unsigned>( x ), static_cast<unsigned>( y ) );
  }

  bool operator==( image_u8 const& ) const = default;
};

namespace detail
{

class pgm_scanner
{
public:
  explicit pgm_scanner( std::string_view data ) : data_( data ) {}

  /*! next header token, skipping whitespace and comments */
  std::string_view token()
  {
    for ( ;; )
    {
      while ( pos_ < data_.size() && std::isspace( static_cast<unsigned char>( data_[pos_] ) ) )
      {
        ++pos_;
      }
      if ( pos_ < data_.size() && data_[pos_] == '#' )
      {
        while ( pos_ < data_.size() && data_[pos_] != '\n' )
        {
          ++pos_;
        }
        continue;
      }
      break;
    }
    auto const start = pos_;
    while ( pos_ < data_.size() && !std::isspace( static_cast<unsigned char>( data_[pos_] ) ) && data_[pos_] != '#' )
    {
      ++pos_;
    }
    if ( start == pos_ )
    {
      throw data_error( "PGM: unexpected end of header" );
    }
    return data_.substr( start, pos_ - start );
  }

  unsigned number( char const* what )
  {
    auto const t = token();
    unsigned long v = 0u;
    for ( auto ch : t )
    {
      if ( ch < '0' || ch > '9' || v > 100'000'000u )
      {
        throw data_error( std::string( "PGM: bad " ) + what + " '" + std::string( t ) + "'" );
      }
      v = v * 10u + static_cast<unsigned>( ch - '0' );
    }
    return static_cast<unsigned>( v );
  }

  /*! binary payload starts after exactly one whitespace character */
  std::string_view payload()
  {
    if ( pos_ >= data_.size() || !std::isspace( static_cast<unsigned char>( data_[pos_] ) ) )
    {
      throw data_error( "PGM: missing whitespace before pixel data" );
    }
    return data_.substr( pos_ + 1u );
  }

  bool at_end()
  {
    while ( pos_ < data_.size() && std::isspace( static_cast<unsigned char>( data_[pos_] ) ) )
    {
      ++pos_;
    }
    return pos_ >= data_.size();
  }

private:
  std::string_view data_;
  std::size_t pos_{ 0u };
};

} // namespace detail

inline image_u8 pgm_decode( std::string_view data )
{
  detail::pgm_scanner sc( data );
  auto const magic = sc.token();
  if ( magic != "P5" && magic != "P2" )
  {
    throw data_error( "PGM: unsupported magic '" + std::string( magic ) + "' (expected P5 or P2)" );
  }
  auto const w = sc.number( "width" );
  auto const h = sc.number( "height" );
  auto const maxval = sc.number( "maxval" );
  if ( w == 0u || h == 0u || std::uint64_t{ w } * h > ( std::uint64_t{ 1 } << 28 ) )
  {
    throw data_error( "PGM: invalid dimensions" );
  }
  if ( maxval != 255u )
  {
    throw data_error( "PGM: unsupported maxval " + std::to_string( maxval ) + " (only 255)" );
  }
  image_u8 img( w, h );
  if ( magic == "P5" )
  {
    auto const body = sc.payload();
    if ( body.size() < img.pixels.size() )
    {
      throw data_error( "PGM: truncated pixel data (" + std::to_string( body.size() ) + " of " +
                        std::to_string( img.pixels.size() ) + " bytes)" );
    }
    for ( std::size_t i = 0; i < img.pixels.size(); ++i )
    {
      img.pixels[i] = static_cast<std::uint8_t>( body[i] );
    }
  }
  else
  {
    for ( auto& p : img.pixels )
    {
      if ( sc.at_end() )
      {
        throw data_error( "PGM: truncated pixel data" );
      }
      auto const v = sc.number( "pixel" );
      if ( v > 255u )
      {
        throw data_error( "PGM: pixel value " + std::to_string( v ) + " exceeds maxval" );
      }
      p = static_cast<std::uint8_t>( v );
    }
  }
  return img;
}

/*! \brief Binary P5 with single-space separated header fields. */
inline std::string pgm_encode( image_u8 const& img )
{
  std::string out = "P5\n" + std::to_string( img.width ) + " " + std::to_string( img.height ) + "\n255\n";
  out.append( img.pixels.begin(), img.pixels.end() );
  return out;
}

inline image_u8 pgm_read( std::string const& path )
{
  std::ifstream is( path, std::ios::binary );
  if ( !is )
  {
    throw io_error( "cannot open '" + path + "'" );
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return pgm_decode( ss.str() );
}

inline void pgm_write( image_u8 const& img, std::string const& path )
{
  std::ofstream os( path, std::ios::binary );
  if ( !os )
  {
    throw io_error( "cannot open '" + path + "' for writing" );
  }
  auto const data = pgm_encode( img );
  os.write( data.data(), static_cast<std::streamsize>( data.size() ) );
  if ( !os.flush() )
  {
    throw io_error( "write to '" + path + "' failed" );
  }
}

/*! \brief Image-domain quality; mse is exact, psnr_db is +inf for identical images. */
struct quality_report
{
  std::uint64_t sse{ 0u };
  std::uint64_t n_pixels{ 0u };
  boost::rational<std::int64_t> mse{ 0 };
  double psnr_db{ std::numeric_limits<double>::infinity() };

  bool infinite() const { return sse == 0u; }
};

inline quality_report psnr( image_u8 const& ref, image_u8 const& test )
{
  if ( ref.width != test.width || ref.height != test.height )
  {
    throw parameter_error( "PSNR: image dimensions differ (" + std::to_string( ref.width ) + "x" +
                           std::to_string( ref.height ) + " vs " + std::to_string( test.width ) + "x" +
                           std::to_string( test.height ) + ")" );
  }
  quality_report q;
  q.n_pixels = ref.pixels.size();
  for ( std::size_t i = 0; i < ref.pixels.size(); ++i )
  {
    auto const d = static_cast<std::int64_t>( ref.pixels[i] ) - test.pixels[i];
    q.sse += static_cast<std::uint64_t>( d * d );
  }
  if ( q.n_pixels == 0u )
  {
    return q;
  }
  q.mse = boost::rational<std::int64_t>( static_cast<std::int64_t>( q.sse ), static_cast<std::int64_t>( q.n_pixels ) );
  if ( q.sse != 0u )
  {
    q.psnr_db = 10.0 * std::log10( 255.0 * 255.0 * static_cast<double>( q.n_pixels ) / static_cast<double>( q.sse ) );
  }
  return q;
}

} // namespace ppc
