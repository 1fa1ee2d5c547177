import org.junit.Test;

public class TokenValidatorTest {

    @Test
    public void testThrowExceptionWhenTokenIsAbsent() {
        Response response = new Response(EMPTY_TOKEN);
        response.extract();
    }
}
